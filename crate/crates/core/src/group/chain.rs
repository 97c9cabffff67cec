//! Stabilizer chains.
//!
//! Each level stores a base point, generators of the pointwise stabilizer of
//! the earlier base points, the basic orbit and a transversal. Stabilizer
//! generators are Schreier generators, thinned with a Sims filter,
//! which keeps at most one generator per (first moved point, image) pair and
//! so bounds each level by `n(n-1)/2` generators.

use std::collections::BTreeMap;

use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `transversal[p]` maps `base` to `p`, for `p` in the orbit.
    pub transversal: Vec<Option<Permutation>>,
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
    /// Generators of the pointwise stabilizer of every base point. Empty for a
    /// complete chain.
    pub residual: Vec<Permutation>,
}

#[derive(Default)]
struct SimsFilter {
    table: BTreeMap<(usize, usize), (Permutation, Permutation)>,
}

impl SimsFilter {
    fn insert(&mut self, mut g: Permutation) {
        while let Some(i) = g.first_moved() {
            let j = g.apply(i);
            match self.table.get(&(i, j)) {
                // g·h⁻¹ fixes every point up to and including i.
                Some((_, h_inv)) => g = g.mul(h_inv),
                None => {
                    let inv = g.inverse();
                    self.table.insert((i, j), (g, inv));
                    return;
                }
            }
        }
    }

    fn into_gens(self) -> Vec<Permutation> {
        self.table.into_values().map(|(g, _)| g).collect()
    }
}

fn filtered(gens: impl IntoIterator<Item = Permutation>) -> Vec<Permutation> {
    let mut filter = SimsFilter::default();
    for g in gens {
        filter.insert(g);
    }
    filter.into_gens()
}

/// Point with the largest orbit under `gens`; ties go to the smaller point.
fn largest_orbit_point(degree: usize, gens: &[Permutation]) -> usize {
    let mut comp = vec![usize::MAX; degree];
    let mut best = (0usize, 0usize);
    for s in 0..degree {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for g in gens {
                let y = g.apply(x);
                if comp[y] == usize::MAX {
                    comp[y] = s;
                    members.push(y);
                }
            }
        }
        if members.len() > best.0 {
            best = (members.len(), s);
        }
    }
    best.1
}

impl StabChain {
    /// Builds a chain whose base begins with `prefix`. With `complete` the base
    /// is extended greedily until the stabilizer is trivial; otherwise the
    /// chain stops after the prefix and `residual` generates the pointwise
    /// stabilizer of the prefix.
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[usize], complete: bool) -> Self {
        let mut current = filtered(gens.iter().filter(|g| !g.is_identity()).cloned());
        let mut levels = Vec::new();
        let mut prefix = prefix.iter().copied();
        loop {
            let base = match prefix.next() {
                Some(b) => b,
                None if complete && !current.is_empty() => largest_orbit_point(degree, &current),
                None => break,
            };
            let level = Self::level(degree, base, current);
            current = filtered(Self::schreier_generators(&level));
            levels.push(level);
        }
        StabChain {
            degree,
            levels,
            residual: current,
        }
    }

    fn level(degree: usize, base: usize, gens: Vec<Permutation>) -> Level {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        let mut orbit = vec![base];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            i += 1;
            for s in &gens {
                let q = s.apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().unwrap().mul(s);
                    transversal[q] = Some(u);
                    orbit.push(q);
                }
            }
        }
        Level {
            base,
            gens,
            orbit,
            transversal,
        }
    }

    fn schreier_generators(level: &Level) -> Vec<Permutation> {
        let mut out = Vec::new();
        for &p in &level.orbit {
            let up = level.transversal[p].as_ref().unwrap();
            for s in &level.gens {
                let q = s.apply(p);
                let uq = level.transversal[q].as_ref().unwrap();
                let h = up.mul(s).mul(&uq.inverse());
                if !h.is_identity() {
                    out.push(h);
                }
            }
        }
        out
    }

    /// Group order as the product of basic orbit lengths (saturating).
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Strips `g` through the chain; returns the residue and the number of
    /// levels passed.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (depth, level) in self.levels.iter().enumerate() {
            let p = h.apply(level.base);
            match &level.transversal[p] {
                Some(u) => h = h.mul(&u.inverse()),
                None => return (h, depth),
            }
        }
        (h, self.levels.len())
    }

    /// Membership for a complete chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, depth) = self.sift(g);
        depth == self.levels.len() && h.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn elements(&self) -> Elements<'_> {
        let reps = self
            .levels
            .iter()
            .map(|l| {
                l.orbit
                    .iter()
                    .map(|&p| l.transversal[p].as_ref().unwrap())
                    .collect()
            })
            .collect();
        Elements {
            degree: self.degree,
            reps,
            counter: vec![0; self.levels.len()],
            done: false,
        }
    }
}

/// Every element exactly once, as `t_k ⋯ t_1` with `t_i` from level `i`'s transversal.
pub struct Elements<'a> {
    degree: usize,
    reps: Vec<Vec<&'a Permutation>>,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut g = Permutation::identity(self.degree);
        for (level, &i) in self.counter.iter().enumerate().rev() {
            g = g.mul(self.reps[level][i]);
        }
        // Advance the mixed-radix counter, innermost level fastest.
        let mut carry = true;
        for level in (0..self.counter.len()).rev() {
            self.counter[level] += 1;
            if self.counter[level] < self.reps[level].len() {
                carry = false;
                break;
            }
            self.counter[level] = 0;
        }
        if carry {
            self.done = true;
        }
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7 {
            let gens = vec![
                Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap(),
            ];
            let chain = StabChain::build(n, &gens, &[], true);
            let expected: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), expected);
            assert_eq!(chain.elements().count() as u128, expected);
        }
    }

    #[test]
    fn prefix_gives_stabilizer() {
        let gens = vec![p("(0 1)", 4), p("(0 1 2 3)", 4)];
        let chain = StabChain::build(4, &gens, &[0], false);
        let stab = StabChain::build(4, &chain.residual, &[], true);
        assert_eq!(stab.order(), 6);
        assert!(stab.levels.iter().all(|l| l.base != 0));
    }

    #[test]
    fn membership() {
        let gens = vec![p("(0 1 2)(3 4 5)", 6), p("(0 3)(1 4)(2 5)", 6)];
        let chain = StabChain::build(6, &gens, &[], true);
        assert_eq!(chain.order(), 6);
        assert!(chain.contains(&p("(0 4 2 3 1 5)", 6)));
        assert!(!chain.contains(&p("(0 1)", 6)));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::build(5, &[Permutation::identity(5)], &[], true);
        assert_eq!(chain.order(), 1);
        assert_eq!(chain.elements().count(), 1);
    }
}
