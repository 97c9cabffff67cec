//! Automorphism groups and transitivity predicates.

mod report;
mod search;

use std::collections::HashMap;

pub use report::{transitivity_report, transitivity_report_with, GroupChoice, TransitivityReport};
pub use search::{automorphism_group, automorphism_group_with};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// Orbits of `group` on `tuples` under the diagonal action, as lists of
/// indices into `tuples`. Orbits are sorted internally and by first index.
pub fn orbits_on_tuples<T: AsRef<[usize]>>(
    group: &PermGroup,
    tuples: &[T],
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_ref(), i))
        .collect();
    let mut parent: Vec<usize> = (0..tuples.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut image = Vec::new();
    for g in group.generators() {
        for (i, t) in tuples.iter().enumerate() {
            image.clear();
            for &x in t.as_ref() {
                if x >= group.degree() {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        n: group.degree(),
                    });
                }
                image.push(g.apply(x));
            }
            let j = *index.get(image.as_slice()).ok_or(Error::SetNotInvariant)?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..tuples.len() {
        let r = find(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[k].push(i);
    }
    Ok(orbits)
}

fn orbit_count<T: AsRef<[usize]>>(group: &PermGroup, tuples: &[T]) -> Result<usize> {
    Ok(orbits_on_tuples(group, tuples)?.len())
}

/// Errors unless `group` acts on the vertices of `g` by automorphisms.
pub fn validate_automorphisms(g: &Digraph, group: &PermGroup) -> Result<()> {
    if group.degree() != g.n()
        || !group
            .generators()
            .iter()
            .all(|p| g.is_automorphism(p.images()))
    {
        return Err(Error::NotAutomorphismGroup);
    }
    Ok(())
}

/// Number of s-arcs, saturating.
fn s_arc_count(g: &Digraph, s: usize) -> u128 {
    let mut ways = vec![1u128; g.n()];
    for _ in 0..s {
        ways = (0..g.n())
            .map(|v| {
                g.out_neighbors(v)
                    .iter()
                    .fold(0u128, |acc, &w| acc.saturating_add(ways[w]))
            })
            .collect();
    }
    ways.iter().fold(0, |acc, &w| acc.saturating_add(w))
}

pub fn is_vertex_transitive(g: &Digraph, group: &PermGroup) -> Result<bool> {
    validate_automorphisms(g, group)?;
    Ok(group.is_transitive())
}

pub fn is_arc_transitive(g: &Digraph, group: &PermGroup) -> Result<bool> {
    is_s_arc_transitive(g, group, 1)
}

/// Single orbit on the s-arcs. With no s-arcs the answer is false unless the
/// digraph has no arcs at all.
pub fn is_s_arc_transitive(g: &Digraph, group: &PermGroup, s: usize) -> Result<bool> {
    validate_automorphisms(g, group)?;
    if s == 0 {
        return Err(Error::BadParameter("s must be at least 1".into()));
    }
    Ok(s_arc_transitive_unchecked(g, group, s))
}

pub(crate) fn s_arc_transitive_unchecked(g: &Digraph, group: &PermGroup, s: usize) -> bool {
    let count = s_arc_count(g, s);
    if count == 0 {
        return g.arc_count() == 0;
    }
    if count > group.order() {
        return false;
    }
    let arcs = g.enumerate_s_arcs(s);
    orbit_count(group, &arcs).expect("s-arcs are invariant under automorphisms") <= 1
}

/// Single orbit on the i-geodesics for every `1 ≤ i ≤ s`. Levels beyond the
/// largest finite distance are empty and impose nothing, so `s` is truncated.
pub fn is_s_geodesic_transitive(g: &Digraph, group: &PermGroup, s: usize) -> Result<bool> {
    validate_automorphisms(g, group)?;
    if s == 0 {
        return Err(Error::BadParameter("s must be at least 1".into()));
    }
    Ok(s_geodesic_transitive_unchecked(g, group, s))
}

pub(crate) fn s_geodesic_transitive_unchecked(g: &Digraph, group: &PermGroup, s: usize) -> bool {
    let top = s.min(g.max_finite_distance());
    (1..=top).all(|i| geodesic_level_transitive(g, group, i))
}

pub(crate) fn geodesic_level_transitive(g: &Digraph, group: &PermGroup, i: usize) -> bool {
    let geodesics = g.enumerate_s_geodesics(i);
    if geodesics.len() as u128 > group.order() {
        return false;
    }
    orbit_count(group, &geodesics).expect("geodesics are invariant under automorphisms") <= 1
}

/// Single orbit on `{(u, v) : d(u, v) = i}` for each `0 ≤ i ≤ diameter`.
pub fn is_distance_transitive(g: &Digraph, group: &PermGroup) -> Result<bool> {
    validate_automorphisms(g, group)?;
    let diameter = g.diameter()?;
    let mut levels: Vec<Vec<[usize; 2]>> = vec![Vec::new(); diameter + 1];
    for u in 0..g.n() {
        for v in 0..g.n() {
            levels[g.distance(u, v).unwrap()].push([u, v]);
        }
    }
    for pairs in &levels {
        if orbit_count(group, pairs)? > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn circulant(n: usize, conn: &[usize]) -> Digraph {
        Digraph::build(
            n,
            (0..n).flat_map(|x| conn.iter().map(move |&r| (x, (x + r) % n))),
        )
        .unwrap()
    }

    #[test]
    fn tuple_orbits() {
        let c6 = circulant(6, &[1]);
        let aut = automorphism_group(&c6).unwrap();
        let arcs: Vec<Vec<usize>> = c6.arcs().iter().map(|&(u, v)| vec![u, v]).collect();
        assert_eq!(orbits_on_tuples(&aut, &arcs).unwrap().len(), 1);

        let p7 = circulant(7, &[1, 2, 4]);
        let aut = automorphism_group(&p7).unwrap();
        let geo = p7.enumerate_s_geodesics(2);
        let orbits = orbits_on_tuples(&aut, &geo).unwrap();
        assert_eq!(
            orbits.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![21, 21]
        );

        let trivial = PermGroup::trivial(6);
        assert_eq!(orbits_on_tuples(&trivial, &arcs).unwrap().len(), 6);

        let rot = PermGroup::cyclic(6);
        assert_eq!(
            orbits_on_tuples(&rot, &[vec![0, 1]]).unwrap_err(),
            Error::SetNotInvariant
        );
    }

    #[test]
    fn predicates() {
        let c6 = circulant(6, &[1]);
        let aut = automorphism_group(&c6).unwrap();
        for s in 1..=7 {
            assert!(is_s_geodesic_transitive(&c6, &aut, s).unwrap());
        }
        let p7 = circulant(7, &[1, 2, 4]);
        let aut = automorphism_group(&p7).unwrap();
        assert!(is_s_arc_transitive(&p7, &aut, 1).unwrap());
        assert!(!is_s_arc_transitive(&p7, &aut, 2).unwrap());
        assert!(!is_s_geodesic_transitive(&p7, &aut, 2).unwrap());
        assert!(is_distance_transitive(&p7, &aut).unwrap());
        let c4 = circulant(4, &[1]);
        assert!(!is_distance_transitive(&c4, &PermGroup::trivial(4)).unwrap());
        assert!(is_distance_transitive(&c4, &PermGroup::cyclic(4)).unwrap());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let c4 = circulant(4, &[1]);
        let bad = PermGroup::new(vec![Permutation::parse_cycles("(0 1)", 4).unwrap()]).unwrap();
        assert_eq!(
            is_s_arc_transitive(&c4, &bad, 1).unwrap_err(),
            Error::NotAutomorphismGroup
        );
        assert_eq!(
            is_distance_transitive(&c4, &bad).unwrap_err(),
            Error::NotAutomorphismGroup
        );
    }

    #[test]
    fn empty_families_are_vacuous() {
        let g = Digraph::empty(3);
        let s3 = PermGroup::symmetric(3);
        assert!(is_s_arc_transitive(&g, &s3, 2).unwrap());
        assert!(is_s_geodesic_transitive(&g, &s3, 2).unwrap());
        let path = Digraph::build(3, [(0, 1)]).unwrap();
        let swap = PermGroup::trivial(3);
        assert!(is_s_arc_transitive(&path, &swap, 1).unwrap());
        assert!(!is_s_arc_transitive(&path, &swap, 2).unwrap());
    }
}
