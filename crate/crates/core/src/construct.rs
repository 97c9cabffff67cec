//! Standard families, Cayley digraphs and quotient digraphs.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::normal::is_prime;
use crate::group::{GroupTable, Partition, PermGroup};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::symmetry::validate_automorphisms;

/// Directed circuit `C_n` with arcs `(i, i+1 mod n)`.
pub fn circuit(n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "circuit needs n >= 3, got {n}"
        )));
    }
    Digraph::build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// All ordered pairs of distinct vertices.
pub fn complete(n: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::BadParameter("complete graph needs n >= 1".into()));
    }
    Digraph::build(
        n,
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))),
    )
}

/// Nonzero squares mod `q`, sorted.
pub fn quadratic_residues(q: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = (1..q).map(|x| x * x % q).collect();
    set.into_iter().collect()
}

/// `x → y` iff `y − x` is a nonzero square mod `q`; `q` prime, `q ≡ 3 (mod 4)`.
pub fn paley_tournament(q: usize) -> Result<Digraph> {
    if !is_prime(q as u64) || q % 4 != 3 {
        return Err(Error::BadParameter(format!(
            "Paley tournament needs a prime q = 3 mod 4, got {q}"
        )));
    }
    circulant(q, &quadratic_residues(q))
}

/// `Cay(Z_n, S)`: arcs `(x, x + s mod n)`.
pub fn circulant(n: usize, conn: &[usize]) -> Result<Digraph> {
    let spec = CayleySpec::new(GroupTable::cyclic(n)?, conn.to_vec())?;
    Ok(cayley_digraph(&spec))
}

/// Named groups shipped with the crate.
const BUILTIN_TABLES: [(&str, &str); 3] = [
    ("a4", include_str!("../data/groups/a4.txt")),
    ("q8", include_str!("../data/groups/q8.txt")),
    ("z7:z3", include_str!("../data/groups/z7_z3.txt")),
];

/// A group description: `cyclic:7`, `abelian:2,4`, `dihedral:5`,
/// `builtin:a4` (also `q8`, `z7:z3`) or `table:<file>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Builtin(String),
    Table(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = s.split_once(':').ok_or_else(|| {
            Error::BadParameter(format!("group spec `{s}` has no `kind:` prefix"))
        })?;
        let number = |t: &str| -> Result<usize> {
            t.trim()
                .parse()
                .map_err(|_| Error::BadParameter(format!("bad number `{t}` in group spec `{s}`")))
        };
        match kind.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic(number(arg)?)),
            "abelian" => Ok(GroupSpec::Abelian(
                arg.split(',').map(number).collect::<Result<_>>()?,
            )),
            "dihedral" => Ok(GroupSpec::Dihedral(number(arg)?)),
            "builtin" => {
                let name = arg.trim().to_ascii_lowercase();
                if !BUILTIN_TABLES.iter().any(|(n, _)| *n == name) {
                    return Err(Error::BadParameter(format!(
                        "unknown builtin group `{arg}`"
                    )));
                }
                Ok(GroupSpec::Builtin(name))
            }
            "table" => Ok(GroupSpec::Table(PathBuf::from(arg.trim()))),
            other => Err(Error::BadParameter(format!("unknown group kind `{other}`"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Abelian(fs) => {
                let parts: Vec<String> = fs.iter().map(usize::to_string).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Builtin(name) => write!(f, "builtin:{name}"),
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl GroupSpec {
    /// Builds the table; relative `table:` paths are taken from `base`.
    pub fn resolve(&self, base: &Path, limits: &Limits) -> Result<GroupTable> {
        match self {
            GroupSpec::Cyclic(n) => GroupTable::cyclic(*n),
            GroupSpec::Abelian(fs) => GroupTable::abelian(fs),
            GroupSpec::Dihedral(n) => GroupTable::dihedral(*n),
            GroupSpec::Builtin(name) => {
                let (_, text) =
                    BUILTIN_TABLES
                        .iter()
                        .find(|(n, _)| n == name)
                        .ok_or_else(|| {
                            Error::BadParameter(format!("unknown builtin group `{name}`"))
                        })?;
                GroupTable::parse_text(text, limits.assoc_full_order)
            }
            GroupSpec::Table(path) => {
                let full = base.join(path);
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| Error::Io(format!("{}: {e}", full.display())))?;
                GroupTable::parse_text(&text, limits.assoc_full_order)
            }
        }
    }
}

/// A group `H` with connection set `S`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleySpec {
    table: GroupTable,
    conn: Vec<usize>,
}

impl CayleySpec {
    pub fn new(table: GroupTable, mut conn: Vec<usize>) -> Result<Self> {
        conn.sort_unstable();
        conn.dedup();
        for &x in &conn {
            if x >= table.order() {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: table.order(),
                });
            }
        }
        if conn.contains(&table.identity()) {
            return Err(Error::IdentityInConnectionSet);
        }
        if conn
            .iter()
            .any(|&x| conn.binary_search(&table.inverse(x)).is_ok())
        {
            return Err(Error::NotAntisymmetric);
        }
        Ok(CayleySpec { table, conn })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn conn(&self) -> &[usize] {
        &self.conn
    }

    /// `⟨S⟩ = H`.
    pub fn is_connected(&self) -> bool {
        self.table.generates(&self.conn)
    }

    /// Text form: `group <spec>` and `conn a,b,c` lines, `#` comments allowed.
    pub fn parse_text(text: &str, base: &Path, limits: &Limits) -> Result<Self> {
        let mut group = None;
        let mut conn = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(char::is_whitespace).ok_or_else(|| {
                Error::parse(line_no, format!("expected `key value`, found `{line}`"))
            })?;
            match key {
                "group" => {
                    let spec: GroupSpec = value
                        .parse()
                        .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
                    group = Some(spec.resolve(base, limits)?);
                }
                "conn" => {
                    conn = Some(parse_element_list(value).map_err(|m| Error::parse(line_no, m))?)
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        let last = text.lines().count().max(1);
        let table = group.ok_or_else(|| Error::parse(last, "missing `group` line"))?;
        let conn = conn.ok_or_else(|| Error::parse(last, "missing `conn` line"))?;
        CayleySpec::new(table, conn)
    }
}

/// Parses `1,2,4` (spaces allowed).
pub fn parse_element_list(text: &str) -> std::result::Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad element `{t}`")))
        .collect()
}

/// `Cay(H, S)`: vertex `h` per element, arcs `(h, x·h)` for `x ∈ S`.
pub fn cayley_digraph(spec: &CayleySpec) -> Digraph {
    let t = &spec.table;
    let arcs = (0..t.order()).flat_map(|h| spec.conn.iter().map(move |&x| (h, t.product(x, h))));
    Digraph::build(t.order(), arcs)
        .expect("table products are in range and S excludes the identity")
}

/// `Aut(H, S)` as element maps.
pub fn aut_preserving_s(
    table: &GroupTable,
    conn: &[usize],
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    table.automorphisms_preserving(conn, limits)
}

/// Right translations `h ↦ h·g`, as a permutation group on `H`.
pub fn translation_group(table: &GroupTable) -> PermGroup {
    let gens = table
        .generators()
        .into_iter()
        .map(|g| table.right_translation(g))
        .collect();
    PermGroup::from_parts(table.order(), gens)
}

/// `H : Aut(H, S)` acting on `H`: right translations and the automorphisms fixing `S`.
pub fn cayley_holomorph_action(spec: &CayleySpec, limits: &Limits) -> Result<PermGroup> {
    let mut gens = translation_group(&spec.table).generators().to_vec();
    for alpha in aut_preserving_s(&spec.table, &spec.conn, limits)? {
        gens.push(Permutation::from_images_unchecked(alpha));
    }
    Ok(PermGroup::from_parts(spec.table.order(), gens))
}

/// Whether the right-translation copy of `H` is normal in `group`.
pub fn is_normal_cayley(spec: &CayleySpec, group: &PermGroup) -> Result<bool> {
    let translations = translation_group(&spec.table);
    if group.degree() != spec.table.order() || !translations.is_subgroup_of(group) {
        return Err(Error::TranslationNotInG);
    }
    group.is_normal(&translations)
}

/// A quotient digraph with its block system and, when a group was supplied,
/// the induced action on blocks.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: Digraph,
    pub partition: Partition,
    /// Some arc of the original digraph lies inside a block; such arcs are dropped.
    pub internal_arcs: bool,
    pub image: Option<PermGroup>,
    pub kernel: Option<PermGroup>,
}

impl QuotientResult {
    pub fn block_map(&self) -> &[usize] {
        self.partition.block_map()
    }

    pub fn has_fewer_than_three_blocks(&self) -> bool {
        self.partition.len() < 3
    }
}

/// Blocks as vertices; `(A, B)` an arc iff `A ≠ B` and some `a → b` with `a ∈ A`, `b ∈ B`.
pub fn quotient_digraph(
    g: &Digraph,
    partition: &Partition,
    group: Option<&PermGroup>,
) -> Result<QuotientResult> {
    if partition.degree() != g.n() {
        return Err(Error::PartitionInvalid(format!(
            "partition of {} points for a digraph on {} vertices",
            partition.degree(),
            g.n()
        )));
    }
    let mut internal_arcs = false;
    let mut arcs = Vec::new();
    for &(u, v) in g.arcs() {
        let (a, b) = (partition.block_of(u), partition.block_of(v));
        if a == b {
            internal_arcs = true;
        } else {
            arcs.push((a, b));
        }
    }
    let quotient = Digraph::build(partition.len(), arcs)?;
    let (image, kernel) = match group {
        Some(h) => {
            let action = h.induced_block_action(partition)?;
            (Some(action.image), Some(action.kernel))
        }
        None => (None, None),
    };
    Ok(QuotientResult {
        quotient,
        partition: partition.clone(),
        internal_arcs,
        image,
        kernel,
    })
}

/// `Γ_N` for `N ⊴ G ≤ Aut(Γ)`, with the action of `G` on the `N`-orbits.
pub fn quotient_by_normal(
    g: &Digraph,
    group: &PermGroup,
    normal: &PermGroup,
) -> Result<QuotientResult> {
    validate_automorphisms(g, group)?;
    if !group.is_normal(normal)? {
        return Err(Error::NotNormal);
    }
    quotient_digraph(g, &normal.orbit_partition(), Some(group))
}

/// Block map text: `n <count>` then one `vertex block` line per vertex.
pub fn write_block_map(partition: &Partition) -> String {
    let mut s = format!("n {}\n", partition.degree());
    for (v, b) in partition.block_map().iter().enumerate() {
        s.push_str(&format!("{v} {b}\n"));
    }
    s
}

pub fn parse_block_map(text: &str) -> Result<Partition> {
    let mut n = None;
    let mut labels: Vec<Option<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(Error::parse(line_no, "expected header `n <count>`"));
                }
                let count: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad count `{}`", fields[1])))?;
                n = Some(count);
                labels = vec![None; count];
            }
            Some(count) => {
                let nums: Vec<usize> = fields
                    .iter()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::parse(line_no, format!("bad number `{t}`")))
                    })
                    .collect::<Result<_>>()?;
                if nums.len() != 2 {
                    return Err(Error::parse(line_no, "expected `vertex block`"));
                }
                if nums[0] >= count {
                    return Err(Error::parse(
                        line_no,
                        format!("vertex {} out of range", nums[0]),
                    ));
                }
                labels[nums[0]] = Some(nums[1]);
            }
        }
    }
    if n.is_none() {
        return Err(Error::parse(1, "missing header `n <count>`"));
    }
    let labels: Vec<usize> = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| Error::PartitionInvalid(format!("vertex {v} has no block"))))
        .collect::<Result<_>>()?;
    Ok(Partition::from_labels(&labels))
}
