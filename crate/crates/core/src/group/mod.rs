//! Finitely generated permutation groups.

mod blocks;
pub(crate) mod chain;
pub(crate) mod normal;
mod table;

use std::fmt;
use std::sync::OnceLock;

pub use blocks::{BlockAction, Partition};
pub use chain::Elements;
pub use normal::NormalCandidates;
pub use table::GroupTable;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use chain::StabChain;

/// A permutation group given by generators.
///
/// The stabilizer chain is built on first use. `OnceLock` serializes
/// concurrent first use; afterwards the group is read-only.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field(
                "generators",
                &self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PermGroup {
    /// `⟨gens⟩`. The list must be nonempty and of one degree.
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens.first().ok_or(Error::NoGenerators)?.degree();
        Self::with_degree(degree, gens)
    }

    /// Like [`PermGroup::new`] but an empty list gives the trivial group.
    pub fn with_degree(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::from_parts(degree, gens))
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut unique: Vec<Permutation> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_identity() && !unique.contains(&g) {
                unique.push(g);
            }
        }
        PermGroup {
            degree,
            gens: unique,
            chain: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap());
        }
        Self::from_parts(n, gens)
    }

    /// Generated by the 3-cycles `(0 1 i)`.
    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).unwrap())
            .collect();
        Self::from_parts(n, gens)
    }

    /// Regular cyclic group generated by `i ↦ i+1 mod n`.
    pub fn cyclic(n: usize) -> Self {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_parts(n, vec![Permutation::from_images_unchecked(images)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Non-identity generators, deduplicated, in input order.
    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens, &[], true))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Every element, each exactly once.
    pub fn elements(&self) -> Elements<'_> {
        self.chain().elements()
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            i += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbits as a partition, blocks sorted by their least point.
    pub fn orbit_partition(&self) -> Partition {
        let mut seen = vec![false; self.degree];
        let mut blocks = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orbit = self.orbit(p);
                for &x in &orbit {
                    seen[x] = true;
                }
                blocks.push(orbit);
            }
        }
        Partition::from_sorted_blocks(self.degree, blocks)
    }

    pub fn orbits_count(&self) -> usize {
        self.orbit_partition().len()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree as u128
    }

    /// Every point stabilizer is trivial, i.e. each orbit has length `|G|`.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbit_partition()
            .blocks()
            .iter()
            .all(|b| b.len() as u128 == order)
    }

    /// Pointwise stabilizer of `points`.
    pub fn tuple_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        if let Some(&p) = points.iter().find(|&&p| p >= self.degree) {
            return Err(Error::VertexOutOfRange {
                vertex: p,
                n: self.degree,
            });
        }
        if points.is_empty() {
            return Ok(self.clone());
        }
        let partial = StabChain::build(self.degree, &self.gens, points, false);
        Ok(Self::from_parts(self.degree, partial.residual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(
            PermGroup::new(vec![p("(0 1 2 3 4 5)", 6)]).unwrap().order(),
            6
        );
        assert_eq!(
            PermGroup::new(vec![p("(0 1)", 4), p("(0 1 2 3)", 4)])
                .unwrap()
                .order(),
            24
        );
        assert_eq!(PermGroup::alternating(5).order(), 60);
        assert_eq!(PermGroup::trivial(3).order(), 1);
        assert_eq!(PermGroup::new(vec![]).unwrap_err(), Error::NoGenerators);
        assert!(matches!(
            PermGroup::new(vec![p("(0 1)", 2), p("(0 1)", 3)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn orbits() {
        let g = PermGroup::new(vec![p("(0 3)(1 4)(2 5)", 6)]).unwrap();
        assert_eq!(
            g.orbit_partition().blocks(),
            &[vec![0, 3], vec![1, 4], vec![2, 5]]
        );
        assert_eq!(PermGroup::cyclic(6).orbits_count(), 1);
        let v = PermGroup::new(vec![p("(0 1)(2 3)", 4)]).unwrap();
        assert_eq!(v.orbit_partition().blocks(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn stabilizers() {
        let s4 = PermGroup::symmetric(4);
        let st = s4.tuple_stabilizer(&[0]).unwrap();
        assert_eq!(st.order(), 6);
        assert_eq!(st.orbit(0), vec![0]);
        assert_eq!(s4.tuple_stabilizer(&[]).unwrap().order(), 24);
        assert_eq!(s4.tuple_stabilizer(&[0, 1]).unwrap().order(), 2);
        assert!(s4.tuple_stabilizer(&[4]).is_err());
    }

    #[test]
    fn regularity() {
        let c6 = PermGroup::cyclic(6);
        assert!(c6.is_transitive() && c6.is_regular());
        let s4 = PermGroup::symmetric(4);
        assert!(s4.is_transitive() && !s4.is_regular());
        let inv = PermGroup::new(vec![p("(0 1)(2 3)(4 5)", 6)]).unwrap();
        assert!(inv.is_semiregular() && !inv.is_transitive());
        assert!(!s4.is_semiregular());
    }

    #[test]
    fn elements_enumerate_group() {
        let s4 = PermGroup::symmetric(4);
        let mut all: Vec<_> = s4.elements().collect();
        assert_eq!(all.len(), 24);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
        assert!(all.iter().all(|g| s4.contains(g)));
    }
}
