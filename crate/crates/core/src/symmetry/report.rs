use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{automorphism_group_with, is_distance_transitive, orbit_count, validate_automorphisms};
use crate::digraph::{Digraph, SymmetryClass};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::Limits;

/// Which group a report is computed for.
#[derive(Debug, Clone)]
pub enum GroupChoice {
    /// The full automorphism group, found by search.
    Automorphisms,
    Given(PermGroup),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub id: String,
    pub n: usize,
    pub class: SymmetryClass,
    pub valency: Option<usize>,
    pub diameter: usize,
    pub girth: Option<usize>,
    /// True when the group is the full automorphism group.
    pub full_automorphism_group: bool,
    pub group_order: u128,
    pub vertex_transitive: bool,
    pub max_arc_s: usize,
    pub max_geodesic_s: usize,
    pub distance_transitive: bool,
    /// Orbit counts keyed `vertices`, `<s>-arcs`, `<i>-geodesics`.
    pub orbit_counts: BTreeMap<String, usize>,
}

pub fn transitivity_report(
    id: &str,
    g: &Digraph,
    group: GroupChoice,
) -> Result<TransitivityReport> {
    transitivity_report_with(id, g, group, &Limits::default())
}

pub fn transitivity_report_with(
    id: &str,
    g: &Digraph,
    group: GroupChoice,
    limits: &Limits,
) -> Result<TransitivityReport> {
    if g.symmetry_class() != SymmetryClass::Directed {
        return Err(Error::NotDirected);
    }
    let diameter = g.diameter()?;
    let (group, full) = match group {
        GroupChoice::Automorphisms => (automorphism_group_with(g, limits)?, true),
        GroupChoice::Given(h) => {
            validate_automorphisms(g, &h)?;
            (h, false)
        }
    };
    let mut orbit_counts = BTreeMap::new();
    let vertex_orbits = group.orbits_count();
    orbit_counts.insert("vertices".to_string(), vertex_orbits);

    let mut max_arc_s = 0;
    loop {
        let s = max_arc_s + 1;
        let arcs = g.enumerate_s_arcs(s);
        let count = orbit_count(&group, &arcs)?;
        orbit_counts.insert(format!("{s}-arcs"), count);
        if count != 1 {
            break;
        }
        max_arc_s = s;
        // Valency 1: every s-arc is determined by its start, so the answer
        // never changes; stop at the diameter.
        if g.valency() == Some(1) && s >= diameter {
            break;
        }
    }

    let mut max_geodesic_s = 0;
    for i in 1..=diameter {
        let count = orbit_count(&group, &g.enumerate_s_geodesics(i))?;
        orbit_counts.insert(format!("{i}-geodesics"), count);
        if count != 1 {
            break;
        }
        max_geodesic_s = i;
    }

    Ok(TransitivityReport {
        id: id.to_string(),
        n: g.n(),
        class: g.symmetry_class(),
        valency: g.valency(),
        diameter,
        girth: g.girth(),
        full_automorphism_group: full,
        group_order: group.order(),
        vertex_transitive: vertex_orbits == 1,
        max_arc_s,
        max_geodesic_s,
        distance_transitive: is_distance_transitive(g, &group)?,
        orbit_counts,
    })
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// Flat `key=value` block, one field per line.
impl fmt::Display for TransitivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "id={}", self.id)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "class={}", self.class)?;
        writeln!(f, "valency={}", opt(self.valency))?;
        writeln!(f, "diameter={}", self.diameter)?;
        writeln!(f, "girth={}", opt(self.girth))?;
        let label = if self.full_automorphism_group {
            "|Aut|"
        } else {
            "|G|"
        };
        writeln!(f, "{label}={}", self.group_order)?;
        writeln!(f, "vertex_transitive={}", self.vertex_transitive)?;
        writeln!(f, "max_arc_s={}", self.max_arc_s)?;
        writeln!(f, "max_geodesic_s={}", self.max_geodesic_s)?;
        writeln!(f, "distance_transitive={}", self.distance_transitive)?;
        for (family, count) in &self.orbit_counts {
            writeln!(f, "orbits[{family}]={count}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circulant(n: usize, conn: &[usize]) -> Digraph {
        Digraph::build(
            n,
            (0..n).flat_map(|x| conn.iter().map(move |&r| (x, (x + r) % n))),
        )
        .unwrap()
    }

    #[test]
    fn circuit_report() {
        let r = transitivity_report("C5", &circulant(5, &[1]), GroupChoice::Automorphisms).unwrap();
        assert_eq!(r.max_geodesic_s, 4);
        assert!(r.max_arc_s >= 4);
        assert_eq!(r.group_order, 5);
        assert!(r.distance_transitive);
        let text = r.to_string();
        assert!(text.contains("|Aut|=5\n"));
        assert!(text.contains("max_geodesic_s=4\n"));
    }

    #[test]
    fn paley_report() {
        let r = transitivity_report("P7", &circulant(7, &[1, 2, 4]), GroupChoice::Automorphisms)
            .unwrap();
        assert_eq!((r.max_arc_s, r.max_geodesic_s), (1, 1));
        assert_eq!(r.group_order, 21);
        assert_eq!(r.orbit_counts["2-geodesics"], 2);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["max_arc_s"], 1);
    }

    #[test]
    fn preconditions() {
        let k3 = Digraph::build(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        assert_eq!(
            transitivity_report("K3", &k3, GroupChoice::Automorphisms).unwrap_err(),
            Error::NotDirected
        );
        let path = Digraph::build(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            transitivity_report("path", &path, GroupChoice::Automorphisms).unwrap_err(),
            Error::NotStronglyConnected
        );
        let given = GroupChoice::Given(PermGroup::cyclic(6));
        let r = transitivity_report("C6", &circulant(6, &[1]), given).unwrap();
        assert!(r.to_string().contains("|G|=6\n"));
    }
}
