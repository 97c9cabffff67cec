use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    check_arc_local_constraints, run_check, CheckId, CheckResult, Instance, Status, Witness,
};
use crate::construct::{
    cayley_digraph, cayley_holomorph_action, translation_group, CayleySpec, GroupSpec,
};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::normal::is_prime;
use crate::group::GroupTable;
use crate::limits::Limits;
use crate::symmetry::{
    automorphism_group_with, transitivity_report_with, GroupChoice, TransitivityReport,
};

/// Which instances to generate and which checks to run on them.
///
/// Ranges are inclusive `[min, max]` pairs; an empty range or list switches
/// the family off. Fields missing from a TOML file take their default values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurveyConfig {
    /// Orders of the cyclic groups for `Cay(Z_n, S)`.
    pub circulant_n: Vec<usize>,
    /// Connection-set sizes for circulants and listed Cayley groups.
    pub valency: [usize; 2],
    /// Lengths of directed circuits.
    pub circuit_n: Vec<usize>,
    pub paley: Vec<usize>,
    /// Group specs such as `abelian:3,3` or `builtin:a4`.
    pub cayley_groups: Vec<String>,
    /// Instances with more vertices are skipped.
    pub vertex_bound: usize,
    pub checks: Vec<CheckId>,
    /// Worker threads; 0 picks the machine default.
    pub parallelism: usize,
    /// Recorded in the report; enumeration is exhaustive and uses no randomness.
    pub seed: u64,
    pub limits: Limits,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            circulant_n: vec![4, 14],
            valency: [2, 5],
            circuit_n: vec![3, 20],
            paley: vec![7, 11, 19],
            cayley_groups: ["abelian:3,3", "abelian:2,4", "builtin:a4", "builtin:q8"]
                .map(String::from)
                .to_vec(),
            vertex_bound: 24,
            checks: CheckId::ALL.to_vec(),
            parallelism: 0,
            seed: 0,
            limits: Limits::default(),
        }
    }
}

impl SurveyConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: SurveyConfig =
            toml::from_str(text).map_err(|e| Error::BadParameter(format!("survey config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// `default` or a path to a TOML file.
    pub fn load(arg: &str) -> Result<Self> {
        if arg == "default" {
            return Ok(SurveyConfig::default());
        }
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BadParameter(m));
        for (name, range) in [
            ("circulant_n", &self.circulant_n),
            ("circuit_n", &self.circuit_n),
        ] {
            match range.as_slice() {
                [] => {}
                &[lo, hi] if lo > 0 && lo <= hi => {}
                _ => {
                    return bad(format!(
                        "{name} must be empty or a range [min, max] of positive values"
                    ))
                }
            }
        }
        let [lo, hi] = self.valency;
        if lo == 0 || lo > hi {
            return bad("valency must be a nonempty range of positive values".into());
        }
        if self.vertex_bound == 0 {
            return bad("vertex_bound must be positive".into());
        }
        if self.circulant_n.is_empty()
            && self.circuit_n.is_empty()
            && self.paley.is_empty()
            && self.cayley_groups.is_empty()
        {
            return bad("at least one family is required".into());
        }
        if self.checks.is_empty() {
            return bad("no checks selected".into());
        }
        for g in &self.cayley_groups {
            g.parse::<GroupSpec>()?;
        }
        Ok(())
    }
}

/// Family parameters of a corpus instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Circulant { n: usize, conn: Vec<usize> },
    Circuit { n: usize },
    Paley { q: usize },
    Cayley { group: String, conn: Vec<usize> },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Family::Circulant { n, conn } => write!(f, "circulant({n};{})", list(conn)),
            Family::Circuit { n } => write!(f, "circuit({n})"),
            Family::Paley { q } => write!(f, "paley({q})"),
            Family::Cayley { group, conn } => write!(f, "cayley({group};{})", list(conn)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub family: Family,
    pub spec: CayleySpec,
    pub digraph: Digraph,
}

/// Connection sets `S` with `1 ∉ S`, `S ∩ S⁻¹ = ∅`, `lo ≤ |S| ≤ hi` and
/// `⟨S⟩ = H`, in lexicographic order.
fn connection_sets(table: &GroupTable, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn walk(
        t: &GroupTable,
        next: usize,
        lo: usize,
        hi: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() >= lo && t.generates(cur) {
            out.push(cur.clone());
        }
        if cur.len() == hi {
            return;
        }
        for x in next..t.order() {
            let inv = t.inverse(x);
            if x == t.identity() || inv == x || cur.contains(&inv) {
                continue;
            }
            cur.push(x);
            walk(t, x + 1, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(table, 0, lo, hi, &mut Vec::new(), &mut out);
    out
}

fn entry(family: Family, spec: CayleySpec) -> CorpusEntry {
    let digraph = cayley_digraph(&spec);
    CorpusEntry {
        family,
        spec,
        digraph,
    }
}

/// The instances described by `config`, in a fixed order: circulants, circuits,
/// Paley tournaments, then the listed Cayley groups.
pub fn enumerate_corpus(config: &SurveyConfig) -> Result<Vec<CorpusEntry>> {
    config.validate()?;
    let bound = config.vertex_bound;
    let [vlo, vhi] = config.valency;
    let mut out = Vec::new();
    if let &[lo, hi] = config.circulant_n.as_slice() {
        for n in lo.max(2)..=hi.min(bound) {
            let table = GroupTable::cyclic(n)?;
            for conn in connection_sets(&table, vlo, vhi) {
                let spec = CayleySpec::new(table.clone(), conn.clone())?;
                out.push(entry(Family::Circulant { n, conn }, spec));
            }
        }
    }
    if let &[lo, hi] = config.circuit_n.as_slice() {
        for n in lo.max(3)..=hi.min(bound) {
            let spec = CayleySpec::new(GroupTable::cyclic(n)?, vec![1])?;
            out.push(entry(Family::Circuit { n }, spec));
        }
    }
    for &q in &config.paley {
        if q > bound {
            continue;
        }
        if !is_prime(q as u64) || q % 4 != 3 {
            return Err(Error::BadParameter(format!(
                "Paley order {q} is not a prime = 3 mod 4"
            )));
        }
        let spec = CayleySpec::new(
            GroupTable::cyclic(q)?,
            crate::construct::quadratic_residues(q),
        )?;
        out.push(entry(Family::Paley { q }, spec));
    }
    for name in &config.cayley_groups {
        let group: GroupSpec = name.parse()?;
        let table = group.resolve(Path::new("."), &config.limits)?;
        if table.order() > bound {
            continue;
        }
        for conn in connection_sets(&table, vlo, vhi) {
            let spec = CayleySpec::new(table.clone(), conn.clone())?;
            out.push(entry(
                Family::Cayley {
                    group: group.to_string(),
                    conn,
                },
                spec,
            ));
        }
    }
    Ok(out)
}

/// One check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub instance: String,
    #[serde(flatten)]
    pub family: Family,
    /// `aut` for the full automorphism group, `holomorph` for `H : Aut(H, S)`
    /// with the translations as the normal subgroup.
    pub group: String,
    pub check: CheckId,
    pub status: Status,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

/// Per-instance transitivity data, or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub instance: String,
    #[serde(flatten)]
    pub family: Family,
    pub report: Option<TransitivityReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyReport {
    pub seed: u64,
    pub instances: Vec<InstanceRecord>,
    pub records: Vec<SurveyRecord>,
}

impl SurveyReport {
    pub fn count(&self, id: CheckId, status: Status) -> usize {
        self.records
            .iter()
            .filter(|r| r.check == id && r.status == status)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &SurveyRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    /// One JSON object per line: instance reports first, then check records.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            out.push_str(&serde_json::to_string(i).expect("instance records serialize"));
            out.push('\n');
        }
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("survey records serialize"));
            out.push('\n');
        }
        out
    }

    /// Status counts per check, then every failure.
    pub fn summary_table(&self) -> String {
        let mut ids: Vec<CheckId> = self.records.iter().map(|r| r.check).collect();
        ids.sort();
        ids.dedup();
        let mut out = String::new();
        let errors = self.instances.iter().filter(|i| i.error.is_some()).count();
        writeln!(
            out,
            "instances={} errors={} seed={}",
            self.instances.len(),
            errors,
            self.seed
        )
        .unwrap();
        writeln!(
            out,
            "{:<8} {:>6} {:>6} {:>8} {:>10}",
            "check", "pass", "fail", "n/a", "incomplete"
        )
        .unwrap();
        for id in ids {
            writeln!(
                out,
                "{:<8} {:>6} {:>6} {:>8} {:>10}",
                id.as_str(),
                self.count(id, Status::Pass),
                self.count(id, Status::Fail),
                self.count(id, Status::NotApplicable),
                self.count(id, Status::Incomplete)
            )
            .unwrap();
        }
        let failures: Vec<_> = self.failures().collect();
        writeln!(out, "failures={}", failures.len()).unwrap();
        for r in failures {
            let witness = r
                .witness
                .as_ref()
                .map_or_else(String::new, |w| serde_json::to_string(w).unwrap());
            writeln!(
                out,
                "FAIL {} {} [{}] {} {}",
                r.check,
                r.instance,
                r.group,
                witness,
                r.notes.join("; ")
            )
            .unwrap();
        }
        out
    }
}

impl fmt::Display for SurveyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_table())
    }
}

fn record(entry: &CorpusEntry, group: &str, r: CheckResult) -> SurveyRecord {
    SurveyRecord {
        instance: entry.family.to_string(),
        family: entry.family.clone(),
        group: group.to_string(),
        check: r.id,
        status: r.status,
        witness: r.witness,
        notes: r.notes,
    }
}

const LOCAL: [CheckId; 6] = [
    CheckId::L2_1a,
    CheckId::L2_1b,
    CheckId::L4_1,
    CheckId::L4_4,
    CheckId::L4_5,
    CheckId::L4_7,
];

fn evaluate(
    entry: &CorpusEntry,
    checks: &[CheckId],
    limits: &Limits,
) -> (InstanceRecord, Vec<SurveyRecord>) {
    let name = entry.family.to_string();
    let mut records = Vec::new();
    let inst = automorphism_group_with(&entry.digraph, limits)
        .and_then(|aut| Instance::new(entry.digraph.clone(), aut, *limits));
    let inst = match inst {
        Ok(inst) => inst,
        Err(e) => {
            for &id in checks {
                records.push(record(
                    entry,
                    "aut",
                    CheckResult::incomplete(id, e.to_string()),
                ));
            }
            let info = InstanceRecord {
                instance: name,
                family: entry.family.clone(),
                report: None,
                error: Some(e.to_string()),
            };
            return (info, records);
        }
    };

    let report = transitivity_report_with(
        &name,
        inst.digraph(),
        GroupChoice::Given(inst.group().clone()),
        limits,
    )
    .map(|mut r| {
        r.full_automorphism_group = true;
        r
    });
    let local = if checks.iter().any(|id| LOCAL.contains(id)) {
        check_arc_local_constraints(&inst)
    } else {
        Vec::new()
    };
    for &id in checks {
        let r = match local.iter().find(|r| r.id == id) {
            Some(r) => r.clone(),
            None => run_check(id, &inst, None),
        };
        records.push(record(entry, "aut", r));
    }

    if checks.contains(&CheckId::T1_2) {
        let r = cayley_holomorph_action(&entry.spec, limits)
            .and_then(|holo| Instance::new(entry.digraph.clone(), holo, *limits))
            .map(|holo| {
                run_check(
                    CheckId::T1_2,
                    &holo,
                    Some(&translation_group(entry.spec.table())),
                )
            })
            .unwrap_or_else(|e| CheckResult::incomplete(CheckId::T1_2, e.to_string()));
        records.push(record(entry, "holomorph", r));
    }

    let (report, error) = match report {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let info = InstanceRecord {
        instance: name,
        family: entry.family.clone(),
        report,
        error,
    };
    (info, records)
}

/// Runs the configured checks over the corpus. Instances are processed in
/// parallel and merged in generation order, so the report does not depend on
/// the thread count. Per-instance errors become `incomplete` records.
pub fn run_survey(config: &SurveyConfig) -> Result<SurveyReport> {
    let corpus = enumerate_corpus(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::BadParameter(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        corpus
            .par_iter()
            .map(|e| evaluate(e, &config.checks, &config.limits))
            .collect()
    });
    let mut instances = Vec::with_capacity(results.len());
    let mut records = Vec::new();
    for (info, recs) in results {
        instances.push(info);
        records.extend(recs);
    }
    Ok(SurveyReport {
        seed: config.seed,
        instances,
        records,
    })
}

/// Instance counts per family kind.
#[cfg(test)]
fn family_counts(corpus: &[CorpusEntry]) -> std::collections::BTreeMap<&'static str, usize> {
    let mut m = std::collections::BTreeMap::new();
    for e in corpus {
        let k = match e.family {
            Family::Circulant { .. } => "circulant",
            Family::Circuit { .. } => "circuit",
            Family::Paley { .. } => "paley",
            Family::Cayley { .. } => "cayley",
        };
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SurveyConfig {
        SurveyConfig {
            circulant_n: vec![4, 7],
            circuit_n: vec![3, 6],
            paley: vec![7],
            cayley_groups: vec!["builtin:q8".into()],
            ..SurveyConfig::default()
        }
    }

    #[test]
    fn connection_sets_of_z5() {
        let t = GroupTable::cyclic(5).unwrap();
        let sets = connection_sets(&t, 2, 5);
        assert_eq!(sets, vec![vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4]]);
        assert!(
            connection_sets(&GroupTable::abelian(&[2, 4]).unwrap(), 1, 5)
                .iter()
                .all(|s| s.iter().all(|&x| x != 4))
        );
    }

    #[test]
    fn corpus_shape() {
        let corpus = enumerate_corpus(&small()).unwrap();
        let counts = family_counts(&corpus);
        assert_eq!(counts["circuit"], 4);
        assert_eq!(counts["paley"], 1);
        assert!(counts["circulant"] > 0 && counts["cayley"] > 0);
        for e in &corpus {
            assert!(e.digraph.is_strongly_connected(), "{}", e.family);
            assert!(e.digraph.is_directed());
        }
    }

    #[test]
    fn small_survey_is_clean_and_deterministic() {
        let mut config = small();
        config.parallelism = 1;
        let a = run_survey(&config).unwrap();
        config.parallelism = 3;
        let b = run_survey(&config).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert_eq!(a.summary_table(), b.summary_table());
        assert!(!a.has_failures(), "{}", a.summary_table());
        assert!(a.records.iter().any(|r| r.group == "holomorph"));
    }

    #[test]
    fn config_parsing() {
        let c =
            SurveyConfig::from_toml("paley = [7]\ncirculant_n = [4, 6]\nchecks = [\"T1.4i\"]\n")
                .unwrap();
        assert_eq!(c.paley, vec![7]);
        assert_eq!(c.checks, vec![CheckId::T1_4i]);
        assert!(SurveyConfig::from_toml("valency = [3, 2]").is_err());
        assert!(SurveyConfig::from_toml("bogus = 1").is_err());
        assert!(SurveyConfig::from_toml("circulant_n = [0, 3]").is_err());
        let none = "circulant_n = []\ncircuit_n = []\npaley = []\ncayley_groups = []\n";
        assert!(SurveyConfig::from_toml(none).is_err());
        let only =
            SurveyConfig::from_toml("circulant_n = []\ncircuit_n = []\ncayley_groups = []\n")
                .unwrap();
        assert_eq!(enumerate_corpus(&only).unwrap().len(), 3);
    }
}
