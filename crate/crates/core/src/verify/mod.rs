//! Executable checks of the structural statements, and corpus surveys.

mod checks;
mod survey;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use checks::{
    check_arc_local_constraints, check_hadamard_design, check_no_arc_in_orbit,
    check_quotient_class, check_quotient_theorem, check_regular_normal, check_small_valency,
    check_soluble_base, check_two_orbit_normal, design_parameters, DesignParameters,
};
pub use survey::{
    enumerate_corpus, run_survey, CorpusEntry, Family, InstanceRecord, SurveyConfig, SurveyRecord,
    SurveyReport,
};

use crate::digraph::{Digraph, SymmetryClass};
use crate::error::{Error, Result};
use crate::group::{NormalCandidates, PermGroup};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::symmetry::{
    automorphism_group_with, geodesic_level_transitive, s_arc_transitive_unchecked,
    validate_automorphisms,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    /// Out-neighbourhood of `u` is not `{v}` plus the common out-neighbours.
    L2_1a,
    /// Empty common out-neighbourhood iff every 2-arc is a 2-geodesic.
    L2_1b,
    /// No normal-subgroup orbit contains an arc.
    L3_1,
    /// A normal subgroup with two orbits forces 2-arc-transitivity and bipartiteness.
    L3_2,
    /// Quotient by a normal subgroup with at least three orbits is directed or complete.
    L3_3,
    /// Common out-neighbour count is never `r - 1`.
    L4_1,
    /// Common out-neighbour count is never 1 when `[Γ⁺(u)] ≅ kΣ` or the valency is 4.
    L4_4,
    /// Common out-neighbour count is never `r - 2` when `r ≥ 4`.
    L4_5,
    /// Valency 5 with common count 2 rules out 2-geodesic-transitivity.
    L4_7,
    /// Quotient reduction.
    T1_1,
    /// Regular normal subgroup forces a circuit.
    T1_2,
    /// Valency at most 5: 2-geodesic- iff 2-arc-transitive.
    T1_4i,
    /// Diameter 2: Hadamard design.
    T1_4ii,
    /// Soluble quasiprimitive or bi-quasiprimitive base case.
    P3_4,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::L2_1a,
        CheckId::L2_1b,
        CheckId::L3_1,
        CheckId::L3_2,
        CheckId::L3_3,
        CheckId::L4_1,
        CheckId::L4_4,
        CheckId::L4_5,
        CheckId::L4_7,
        CheckId::T1_1,
        CheckId::T1_2,
        CheckId::T1_4i,
        CheckId::T1_4ii,
        CheckId::P3_4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::L2_1a => "L2.1a",
            CheckId::L2_1b => "L2.1b",
            CheckId::L3_1 => "L3.1",
            CheckId::L3_2 => "L3.2",
            CheckId::L3_3 => "L3.3",
            CheckId::L4_1 => "L4.1",
            CheckId::L4_4 => "L4.4",
            CheckId::L4_5 => "L4.5",
            CheckId::L4_7 => "L4.7",
            CheckId::T1_1 => "T1.1",
            CheckId::T1_2 => "T1.2",
            CheckId::T1_4i => "T1.4i",
            CheckId::T1_4ii => "T1.4ii",
            CheckId::P3_4 => "P3.4",
        }
    }

    /// Whether the check quantifies over normal subgroups.
    pub fn uses_normal_subgroup(self) -> bool {
        matches!(
            self,
            CheckId::L3_1 | CheckId::L3_2 | CheckId::L3_3 | CheckId::T1_1 | CheckId::T1_2
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::BadParameter(format!("unknown check id `{t}`")))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Incomplete,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
            Status::Incomplete => "incomplete",
        })
    }
}

/// What a failing check points at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Arc {
        u: usize,
        v: usize,
    },
    /// Two design points lying in the wrong number of out-neighbourhoods.
    Pair {
        x: usize,
        y: usize,
    },
    /// A normal subgroup, by generators in cycle notation.
    Subgroup {
        generators: Vec<String>,
    },
    /// The input digraph and group themselves.
    Instance,
}

impl Witness {
    pub(crate) fn subgroup(n: &PermGroup) -> Self {
        Witness::Subgroup {
            generators: n.generators().iter().map(Permutation::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub status: Status,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CheckResult {
    pub(crate) fn pass(id: CheckId) -> Self {
        CheckResult {
            id,
            status: Status::Pass,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn not_applicable(id: CheckId, note: impl Into<String>) -> Self {
        CheckResult {
            id,
            status: Status::NotApplicable,
            witness: None,
            notes: vec![note.into()],
        }
    }

    pub(crate) fn incomplete(id: CheckId, note: impl Into<String>) -> Self {
        CheckResult {
            id,
            status: Status::Incomplete,
            witness: None,
            notes: vec![note.into()],
        }
    }

    pub(crate) fn fail(id: CheckId, witness: Witness, note: impl Into<String>) -> Self {
        CheckResult {
            id,
            status: Status::Fail,
            witness: Some(witness),
            notes: vec![note.into()],
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// A digraph with a group of automorphisms, plus lazily computed facts shared by the checks.
pub struct Instance {
    digraph: Digraph,
    group: PermGroup,
    limits: Limits,
    max_geodesic: OnceLock<usize>,
    two_arc: OnceLock<bool>,
    candidates: OnceLock<NormalCandidates>,
}

impl Instance {
    pub fn new(digraph: Digraph, group: PermGroup, limits: Limits) -> Result<Self> {
        validate_automorphisms(&digraph, &group)?;
        Ok(Instance {
            digraph,
            group,
            limits,
            max_geodesic: OnceLock::new(),
            two_arc: OnceLock::new(),
            candidates: OnceLock::new(),
        })
    }

    /// Uses the full automorphism group.
    pub fn with_automorphisms(digraph: Digraph, limits: Limits) -> Result<Self> {
        let group = automorphism_group_with(&digraph, &limits)?;
        Self::new(digraph, group, limits)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Directed class and strongly connected.
    pub(crate) fn is_connected_digraph(&self) -> bool {
        self.digraph.symmetry_class() == SymmetryClass::Directed
            && self.digraph.is_strongly_connected()
    }

    /// Largest `t` up to the largest finite distance such that every level
    /// `1..=t` of geodesics is a single orbit.
    pub fn max_geodesic_s(&self) -> usize {
        *self.max_geodesic.get_or_init(|| {
            let top = self.digraph.max_finite_distance();
            (1..=top)
                .take_while(|&i| geodesic_level_transitive(&self.digraph, &self.group, i))
                .last()
                .unwrap_or(0)
        })
    }

    /// `(G, s)`-geodesic-transitivity with the diameter truncation.
    pub fn is_geodesic_transitive(&self, s: usize) -> bool {
        self.max_geodesic_s() >= s.min(self.digraph.max_finite_distance())
    }

    pub fn is_arc_transitive(&self) -> bool {
        self.digraph.arc_count() > 0 && self.is_geodesic_transitive(1)
    }

    pub fn is_two_arc_transitive(&self) -> bool {
        *self
            .two_arc
            .get_or_init(|| s_arc_transitive_unchecked(&self.digraph, &self.group, 2))
    }

    pub fn candidates(&self) -> &NormalCandidates {
        self.candidates.get_or_init(|| {
            self.group
                .candidate_normal_subgroups(self.limits.group_elements)
        })
    }
}

/// Runs one check. `normal` is used by the checks that quantify over normal
/// subgroups; without it they range over the discovered candidates.
pub fn run_check(id: CheckId, inst: &Instance, normal: Option<&PermGroup>) -> CheckResult {
    match id {
        CheckId::L2_1a
        | CheckId::L2_1b
        | CheckId::L4_1
        | CheckId::L4_4
        | CheckId::L4_5
        | CheckId::L4_7 => check_arc_local_constraints(inst)
            .into_iter()
            .find(|r| r.id == id)
            .expect("every local check reports"),
        CheckId::L3_1 => check_no_arc_in_orbit(inst, normal),
        CheckId::L3_2 => check_two_orbit_normal(inst, normal),
        CheckId::L3_3 => check_quotient_class(inst, normal),
        CheckId::T1_1 => check_quotient_theorem(inst, normal),
        CheckId::T1_2 => check_regular_normal(inst, normal),
        CheckId::T1_4i => check_small_valency(inst),
        CheckId::T1_4ii => check_hadamard_design(inst),
        CheckId::P3_4 => check_soluble_base(inst),
    }
}

/// Re-evaluates a failing result on its witness. Returns `true` when the
/// failure is reproduced.
pub fn replay(result: &CheckResult, inst: &Instance, normal: Option<&PermGroup>) -> Result<bool> {
    if result.status != Status::Fail {
        return Ok(false);
    }
    let g = inst.digraph();
    let r = g.valency().unwrap_or(0);
    match (&result.id, &result.witness) {
        (_, None) => Ok(false),
        (CheckId::L2_1a | CheckId::L4_1, Some(Witness::Arc { u, v })) => Ok(g.has_arc(*u, *v)
            && inst.is_arc_transitive()
            && r >= 2
            && g.common_out_count(*u, *v) == r - 1),
        (CheckId::L4_5, Some(Witness::Arc { u, v })) => Ok(g.has_arc(*u, *v)
            && inst.is_arc_transitive()
            && r >= 4
            && g.common_out_count(*u, *v) == r - 2),
        (CheckId::L4_4, Some(Witness::Arc { u, v })) => Ok(g.has_arc(*u, *v)
            && inst.is_geodesic_transitive(2)
            && g.common_out_count(*u, *v) == 1),
        (CheckId::L3_1, Some(Witness::Arc { u, v })) => {
            let Some(n) = normal else {
                return Ok(run_check(result.id, inst, None).status == Status::Fail);
            };
            let orbits = n.orbit_partition();
            Ok(g.has_arc(*u, *v) && orbits.block_of(*u) == orbits.block_of(*v))
        }
        (CheckId::T1_4ii, Some(Witness::Pair { x, y })) => {
            let n = g.n();
            let count = (0..n)
                .filter(|&b| g.has_arc(b, *x) && g.has_arc(b, *y))
                .count();
            Ok(x != y && n % 4 == 3 && count + 1 != (n + 1) / 4)
        }
        (_, Some(Witness::Subgroup { generators })) => {
            let gens = generators
                .iter()
                .map(|c| Permutation::parse_cycles(c, g.n()))
                .collect::<Result<Vec<_>>>()?;
            let n = PermGroup::with_degree(g.n(), gens)?;
            Ok(run_check(result.id, inst, Some(&n)).status == Status::Fail)
        }
        _ => Ok(run_check(result.id, inst, normal).status == Status::Fail),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(serde_json::from_str::<CheckId>(&json).unwrap(), id);
        }
        assert!("L9.9".parse::<CheckId>().is_err());
    }

    #[test]
    fn result_serializes() {
        let r = CheckResult::fail(CheckId::L4_1, Witness::Arc { u: 0, v: 1 }, "x");
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"id\":\"L4.1\""));
        assert!(json.contains("\"kind\":\"arc\""));
        assert_eq!(serde_json::from_str::<CheckResult>(&json).unwrap(), r);
    }
}
