use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use digeo::construct::{
    cayley_digraph, parse_element_list, quotient_by_normal, write_block_map, CayleySpec, GroupSpec,
};
use digeo::perm::parse_permutation_file;
use digeo::symmetry::{automorphism_group_with, transitivity_report_with, GroupChoice};
use digeo::verify::{run_check, run_survey, CheckId, CheckResult, Instance, Status, SurveyConfig};
use digeo::{Digraph, Limits, PermGroup, SymmetryClass};

#[derive(Parser)]
#[command(
    name = "digeo",
    version,
    about = "Geodesic-transitivity tools for digraphs"
)]
struct Cli {
    #[command(flatten)]
    budget: Budget,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budget {
    /// Backtracking nodes allowed per automorphism search.
    #[arg(long, global = true, env = "DIGEO_SEARCH_NODES")]
    search_nodes: Option<u64>,
    /// Group elements allowed per conjugacy-class sweep.
    #[arg(long, global = true, env = "DIGEO_GROUP_ELEMENTS")]
    group_elements: Option<u64>,
}

impl Budget {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(n) = self.search_nodes {
            l.search_nodes = n;
        }
        if let Some(n) = self.group_elements {
            l.group_elements = n;
        }
        l
    }
}

#[derive(Subcommand)]
enum Command {
    /// Transitivity report for a digraph file under its full automorphism group.
    Analyze {
        digraph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build Cay(H, S).
    Cayley {
        /// `cyclic:7`, `abelian:2,4`, `dihedral:5`, `builtin:a4` or `table:<file>`.
        #[arg(long)]
        group: GroupSpec,
        /// Connection set as comma-separated element indices.
        #[arg(long)]
        conn: String,
        /// Print the digraph file (the default).
        #[arg(long, conflicts_with = "analyze")]
        emit: bool,
        /// Print the transitivity report instead.
        #[arg(long)]
        analyze: bool,
        #[arg(long)]
        json: bool,
    },
    /// Quotient of a digraph by the orbits of a normal subgroup.
    Quotient {
        digraph: PathBuf,
        /// Permutation file for G.
        group: PathBuf,
        /// Permutation file for N.
        normal: PathBuf,
        /// Writes `<prefix>.digraph` and `<prefix>.blocks`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one check.
    Check {
        #[arg(long)]
        id: CheckId,
        #[arg(long)]
        digraph: PathBuf,
        /// Permutation file for G; the full automorphism group when absent.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Permutation file for a normal subgroup N of G.
        #[arg(long)]
        normal: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run checks over a generated corpus.
    Survey {
        /// `default` or a TOML file.
        #[arg(long, default_value = "default")]
        config: String,
        /// Writes one JSON record per line.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the configured thread count.
        #[arg(long)]
        parallelism: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    Digraph::parse_text(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_group(path: &Path, n: usize) -> Result<PermGroup> {
    let (degree, perms) =
        parse_permutation_file(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if degree != n {
        bail!(
            "{}: degree {degree} does not match {n} vertices",
            path.display()
        );
    }
    Ok(PermGroup::with_degree(degree, perms)?)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "digraph".into(), |s| s.to_string_lossy().into_owned())
}

fn analyze(id: &str, g: &Digraph, json: bool, limits: &Limits) -> Result<()> {
    if g.symmetry_class() != SymmetryClass::Directed || !g.is_strongly_connected() {
        let note = if g.symmetry_class() != SymmetryClass::Directed {
            "transitivity report needs a digraph of the directed class"
        } else {
            "digraph is not strongly connected"
        };
        let aut = automorphism_group_with(g, limits)?;
        if json {
            let v = serde_json::json!({
                "id": id,
                "n": g.n(),
                "class": g.symmetry_class(),
                "valency": g.valency(),
                "strongly_connected": g.is_strongly_connected(),
                "group_order": aut.order(),
                "note": note,
            });
            println!("{v}");
        } else {
            println!("id={id}");
            println!("n={}", g.n());
            println!("class={}", g.symmetry_class());
            println!(
                "valency={}",
                g.valency().map_or("none".into(), |v| v.to_string())
            );
            println!("strongly_connected={}", g.is_strongly_connected());
            println!("|Aut|={}", aut.order());
            println!("note={note}");
        }
        return Ok(());
    }
    let report = transitivity_report_with(id, g, GroupChoice::Automorphisms, limits)?;
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        print!("{report}");
    }
    Ok(())
}

fn print_result(r: &CheckResult, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string(r)?);
        return Ok(());
    }
    println!("id={}", r.id);
    println!("status={}", r.status);
    if let Some(w) = &r.witness {
        println!("witness={}", serde_json::to_string(w)?);
    }
    for note in &r.notes {
        println!("note={note}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let limits = cli.budget.limits();
    match cli.command {
        Command::Analyze { digraph, json } => {
            let g = read_digraph(&digraph)?;
            analyze(&stem(&digraph), &g, json, &limits)?;
            Ok(true)
        }
        Command::Cayley {
            group,
            conn,
            emit: _,
            analyze: run_analyze,
            json,
        } => {
            let table = group.resolve(Path::new("."), &limits)?;
            let conn = parse_element_list(&conn).map_err(anyhow::Error::msg)?;
            let spec = CayleySpec::new(table, conn)?;
            let g = cayley_digraph(&spec);
            if run_analyze {
                let list: Vec<String> = spec.conn().iter().map(usize::to_string).collect();
                analyze(
                    &format!("Cay({group};{})", list.join(",")),
                    &g,
                    json,
                    &limits,
                )?;
            } else {
                print!("{}", g.to_text());
            }
            Ok(true)
        }
        Command::Quotient {
            digraph,
            group,
            normal,
            out,
        } => {
            let g = read_digraph(&digraph)?;
            let big = read_group(&group, g.n())?;
            let n = read_group(&normal, g.n())?;
            let q = quotient_by_normal(&g, &big, &n)?;
            println!("class={}", q.quotient.symmetry_class());
            println!("orbits={}", q.partition.len());
            println!("internal_arcs={}", q.internal_arcs);
            match out {
                Some(prefix) => {
                    let d = prefix.with_extension("digraph");
                    let b = prefix.with_extension("blocks");
                    fs::write(&d, q.quotient.to_text())
                        .with_context(|| format!("writing {}", d.display()))?;
                    fs::write(&b, write_block_map(&q.partition))
                        .with_context(|| format!("writing {}", b.display()))?;
                }
                None => {
                    print!("{}", q.quotient.to_text());
                    print!("{}", write_block_map(&q.partition));
                }
            }
            Ok(true)
        }
        Command::Check {
            id,
            digraph,
            group,
            normal,
            json,
        } => {
            let g = read_digraph(&digraph)?;
            let n = g.n();
            let inst = match group {
                Some(path) => Instance::new(g, read_group(&path, n)?, limits)?,
                None => Instance::with_automorphisms(g, limits)?,
            };
            let normal = normal.map(|p| read_group(&p, n)).transpose()?;
            let r = run_check(id, &inst, normal.as_ref());
            print_result(&r, json)?;
            Ok(r.status != Status::Fail)
        }
        Command::Survey {
            config,
            out,
            parallelism,
        } => {
            let mut config = SurveyConfig::load(&config)?;
            if let Some(p) = parallelism {
                config.parallelism = p;
            }
            let report = run_survey(&config)?;
            if let Some(path) = out {
                fs::write(&path, report.to_json_lines())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print!("{}", report.summary_table());
            Ok(!report.has_failures())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
