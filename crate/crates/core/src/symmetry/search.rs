//! Backtracking automorphism search.
//!
//! Levels are processed deepest first: at level `k` the generators found so far
//! fix `0..k`, so their orbit on `k` is known and only images outside that
//! orbit need a search. The generators found this way generate the full group.

use std::collections::BTreeMap;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;

pub fn automorphism_group(g: &Digraph) -> Result<PermGroup> {
    automorphism_group_with(g, &Limits::default())
}

pub fn automorphism_group_with(g: &Digraph, limits: &Limits) -> Result<PermGroup> {
    let mut search = Search::new(g, limits.search_nodes);
    let n = g.n();
    let mut gens: Vec<Permutation> = Vec::new();
    for k in (0..n).rev() {
        let mut orbit = orbit_of(n, &gens, k);
        for v in k + 1..n {
            if orbit[v] || search.class[v] != search.class[k] {
                continue;
            }
            if let Some(images) = search.extend(k, v)? {
                gens.push(Permutation::from_images_unchecked(images));
                orbit = orbit_of(n, &gens, k);
            }
        }
    }
    Ok(PermGroup::from_parts(n, gens))
}

fn orbit_of(n: usize, gens: &[Permutation], point: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut queue = vec![point];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    seen
}

struct Search<'a> {
    g: &'a Digraph,
    /// Vertex invariant class: degrees plus sorted distance rows and columns.
    class: Vec<usize>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Digraph, budget: u64) -> Self {
        let n = g.n();
        let mut ids: BTreeMap<(usize, usize, Vec<u32>, Vec<u32>), usize> = BTreeMap::new();
        let mut class = Vec::with_capacity(n);
        for v in 0..n {
            let mut row: Vec<u32> = (0..n).map(|w| g.distance_raw(v, w)).collect();
            let mut col: Vec<u32> = (0..n).map(|w| g.distance_raw(w, v)).collect();
            row.sort_unstable();
            col.sort_unstable();
            let key = (g.out_degree(v), g.in_degree(v), row, col);
            let next = ids.len();
            class.push(*ids.entry(key).or_insert(next));
        }
        Search {
            g,
            class,
            budget,
            nodes: 0,
        }
    }

    /// An automorphism fixing `0..k` and sending `k` to `v`, if one exists.
    fn extend(&mut self, k: usize, v: usize) -> Result<Option<Vec<usize>>> {
        let n = self.g.n();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for i in 0..k {
            map[i] = i;
            used[i] = true;
        }
        if !self.consistent(&map, k, k, v) {
            return Ok(None);
        }
        map[k] = v;
        used[v] = true;
        if self.assign(k + 1, &mut map, &mut used)? {
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    fn assign(&mut self, x: usize, map: &mut [usize], used: &mut [bool]) -> Result<bool> {
        let n = self.g.n();
        if x == n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        for y in 0..n {
            if used[y] || self.class[y] != self.class[x] || !self.consistent(map, x, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.assign(x + 1, map, used)? {
                return Ok(true);
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        Ok(false)
    }

    /// Distances between `x` and the mapped vertices `0..upto` are preserved by
    /// `x ↦ y`. Distance 1 is adjacency, so a full consistent map is an automorphism.
    fn consistent(&self, map: &[usize], upto: usize, x: usize, y: usize) -> bool {
        (0..upto).all(|z| {
            let fz = map[z];
            self.g.distance_raw(x, z) == self.g.distance_raw(y, fz)
                && self.g.distance_raw(z, x) == self.g.distance_raw(fz, y)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit(n: usize) -> Digraph {
        Digraph::build(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(automorphism_group(&circuit(6)).unwrap().order(), 6);
        let p7 =
            Digraph::build(7, (0..7).flat_map(|x| [1, 2, 4].map(|r| (x, (x + r) % 7)))).unwrap();
        assert_eq!(automorphism_group(&p7).unwrap().order(), 21);
        let k4 = Digraph::build(
            4,
            (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v))),
        )
        .unwrap();
        assert_eq!(automorphism_group(&k4).unwrap().order(), 24);
        assert_eq!(automorphism_group(&Digraph::empty(3)).unwrap().order(), 6);
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = Digraph::build(8, (0..8).flat_map(|x| [1, 3].map(|r| (x, (x + r) % 8)))).unwrap();
        let aut = automorphism_group(&g).unwrap();
        assert!(aut
            .generators()
            .iter()
            .all(|p| g.is_automorphism(p.images())));
    }

    #[test]
    fn budget() {
        let limits = Limits {
            search_nodes: 2,
            ..Limits::default()
        };
        assert!(matches!(
            automorphism_group_with(&Digraph::empty(6), &limits),
            Err(Error::SearchBudgetExceeded(2))
        ));
    }
}
