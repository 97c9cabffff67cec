//! Normal closures, derived series and the quasiprimitivity predicates.
//!
//! Any nontrivial normal subgroup contains the normal closure of each of its
//! elements, and orbits of a subgroup refine those of an overgroup. So a
//! transitive group is quasiprimitive exactly when the normal closure of every
//! nontrivial element is transitive. Restricting to elements of prime order
//! loses nothing (every nontrivial normal subgroup contains one), and the
//! closure only depends on the conjugacy class.

use std::collections::HashSet;

use super::PermGroup;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::Permutation;

/// Result of [`PermGroup::candidate_normal_subgroups`].
#[derive(Debug, Clone)]
pub struct NormalCandidates {
    /// Nontrivial normal subgroups found, by increasing order.
    pub subgroups: Vec<PermGroup>,
    /// True when every element was covered and joins reached a fixpoint, so
    /// `subgroups` is the whole nontrivial normal lattice.
    pub complete: bool,
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl PermGroup {
    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        for e in elements {
            if e.degree() != self.degree() {
                return Err(Error::DegreeMismatch {
                    expected: self.degree(),
                    found: e.degree(),
                });
            }
            if !self.contains(e) {
                return Err(Error::NotSubgroupElement);
            }
        }
        Ok(self.closure_unchecked(elements.to_vec()))
    }

    pub(crate) fn closure_unchecked(&self, seeds: Vec<Permutation>) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut n = PermGroup::from_parts(self.degree(), gens.clone());
        let mut i = 0;
        while i < gens.len() {
            let x = gens[i].clone();
            i += 1;
            for g in self.generators() {
                let c = x.conjugate_by(g);
                if !n.contains(&c) {
                    gens.push(c);
                    n = PermGroup::from_parts(self.degree(), gens.clone());
                }
            }
        }
        n
    }

    /// Whether `sub` is a normal subgroup; errors if it is not a subgroup.
    pub fn is_normal(&self, sub: &PermGroup) -> Result<bool> {
        if sub.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: sub.degree(),
            });
        }
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroupElement);
        }
        Ok(sub.generators().iter().all(|x| {
            self.generators()
                .iter()
                .all(|g| sub.contains(&x.conjugate_by(g)))
        }))
    }

    /// Normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                comms.push(Permutation::commutator(a, b));
            }
        }
        self.closure_unchecked(comms)
    }

    /// Terms of the derived series, starting with `self`, ending at the first
    /// repeated order (trivial for soluble groups).
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Conjugacy class of `g` in `self`.
    pub(crate) fn conjugacy_class(&self, g: &Permutation) -> Vec<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(g.clone());
        let mut class = vec![g.clone()];
        let mut i = 0;
        while i < class.len() {
            let x = class[i].clone();
            i += 1;
            for h in self.generators() {
                let c = x.conjugate_by(h);
                if seen.insert(c.clone()) {
                    class.push(c);
                }
            }
        }
        class
    }

    /// One representative per conjugacy class among elements accepted by
    /// `keep`, scanning at most `budget` elements. The flag reports whether the
    /// scan covered the whole group.
    pub(crate) fn class_representatives(
        &self,
        budget: u64,
        keep: impl Fn(&Permutation) -> bool,
    ) -> (Vec<Permutation>, bool) {
        let mut covered: HashSet<Permutation> = HashSet::new();
        let mut reps = Vec::new();
        let complete = self.order() <= budget as u128;
        for g in self.elements().take(budget.min(usize::MAX as u64) as usize) {
            if g.is_identity() || !keep(&g) || covered.contains(&g) {
                continue;
            }
            for c in self.conjugacy_class(&g) {
                covered.insert(c);
            }
            reps.push(g);
        }
        (reps, complete)
    }

    /// Orbit counts of the normal closures of prime-order class representatives.
    fn prime_closure_orbit_counts(&self, limits: &Limits) -> Result<Vec<usize>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let (reps, complete) =
            self.class_representatives(limits.group_elements, |g| is_prime(g.order()));
        if !complete {
            return Err(Error::BudgetExceeded(format!(
                "group of order {} exceeds the element budget {}",
                self.order(),
                limits.group_elements
            )));
        }
        Ok(reps
            .into_iter()
            .map(|g| self.closure_unchecked(vec![g]).orbits_count())
            .collect())
    }

    pub fn is_quasiprimitive(&self) -> Result<bool> {
        self.is_quasiprimitive_with(&Limits::default())
    }

    pub fn is_quasiprimitive_with(&self, limits: &Limits) -> Result<bool> {
        Ok(self
            .prime_closure_orbit_counts(limits)?
            .iter()
            .all(|&c| c == 1))
    }

    pub fn is_biquasiprimitive(&self) -> Result<bool> {
        self.is_biquasiprimitive_with(&Limits::default())
    }

    pub fn is_biquasiprimitive_with(&self, limits: &Limits) -> Result<bool> {
        let counts = self.prime_closure_orbit_counts(limits)?;
        Ok(counts.iter().all(|&c| c <= 2) && counts.contains(&2))
    }

    /// Normal subgroups found as closures of single elements and joins of
    /// those closures. At most `budget` elements are scanned for class
    /// representatives.
    pub fn candidate_normal_subgroups(&self, budget: u64) -> NormalCandidates {
        let (reps, mut complete) = self.class_representatives(budget, |_| true);
        let mut found: Vec<PermGroup> = Vec::new();
        let push = |found: &mut Vec<PermGroup>, h: PermGroup| {
            if !h.is_trivial() && !found.iter().any(|f| f.same_group(&h)) {
                found.push(h);
                true
            } else {
                false
            }
        };
        for g in reps {
            push(&mut found, self.closure_unchecked(vec![g]));
        }
        // Join of two normal subgroups is normal; iterate to a fixpoint.
        let mut joins = 0u64;
        let mut grew = true;
        while grew {
            grew = false;
            let snapshot = found.len();
            'outer: for i in 0..snapshot {
                for j in i + 1..snapshot {
                    if found[i].is_subgroup_of(&found[j]) || found[j].is_subgroup_of(&found[i]) {
                        continue;
                    }
                    joins += 1;
                    if joins > budget {
                        complete = false;
                        break 'outer;
                    }
                    let gens: Vec<Permutation> = found[i]
                        .generators()
                        .iter()
                        .chain(found[j].generators())
                        .cloned()
                        .collect();
                    let join = PermGroup::from_parts(self.degree(), gens);
                    grew |= push(&mut found, join);
                }
            }
            if joins > budget {
                break;
            }
        }
        found.sort_by_key(|h| h.order());
        NormalCandidates {
            subgroups: found,
            complete,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn closures() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.normal_closure(&[p("(0 1 2)", 3)]).unwrap().order(), 3);
        let s4 = PermGroup::symmetric(4);
        let v4 = s4.normal_closure(&[p("(0 1)(2 3)", 4)]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(s4.is_normal(&v4).unwrap());
        assert_eq!(
            PermGroup::cyclic(4)
                .normal_closure(&[p("(0 1)", 4)])
                .unwrap_err(),
            Error::NotSubgroupElement
        );
    }

    #[test]
    fn normality() {
        let c6 = PermGroup::cyclic(6);
        let half = PermGroup::new(vec![p("(0 3)(1 4)(2 5)", 6)]).unwrap();
        assert!(c6.is_normal(&half).unwrap());
        let s3 = PermGroup::symmetric(3);
        let t = PermGroup::new(vec![p("(0 1)", 3)]).unwrap();
        assert!(!s3.is_normal(&t).unwrap());
    }

    #[test]
    fn solubility() {
        assert!(PermGroup::symmetric(4).is_soluble());
        assert!(!PermGroup::alternating(5).is_soluble());
        assert!(!PermGroup::symmetric(5).is_soluble());
        let f21 = PermGroup::new(vec![p("(0 1 2 3 4 5 6)", 7), p("(1 2 4)(3 6 5)", 7)]).unwrap();
        assert_eq!(f21.order(), 21);
        assert!(f21.is_soluble());
        assert_eq!(f21.derived_series().len(), 3);
    }

    #[test]
    fn quasiprimitivity() {
        let a5 = PermGroup::alternating(5);
        assert!(a5.is_quasiprimitive().unwrap());
        assert!(!a5.is_biquasiprimitive().unwrap());
        let c6 = PermGroup::cyclic(6);
        assert!(!c6.is_quasiprimitive().unwrap());
        assert!(!c6.is_biquasiprimitive().unwrap());
        let c4 = PermGroup::cyclic(4);
        assert!(!c4.is_quasiprimitive().unwrap());
        assert!(c4.is_biquasiprimitive().unwrap());
        assert!(PermGroup::cyclic(7).is_quasiprimitive().unwrap());
        let intrans = PermGroup::new(vec![p("(0 1)", 3)]).unwrap();
        assert_eq!(
            intrans.is_quasiprimitive().unwrap_err(),
            Error::NotTransitive
        );
    }

    #[test]
    fn candidates() {
        let orders = |g: &PermGroup| -> Vec<u128> {
            let c = g.candidate_normal_subgroups(1_000_000);
            assert!(c.complete);
            c.subgroups.iter().map(|h| h.order()).collect()
        };
        assert_eq!(orders(&PermGroup::cyclic(6)), vec![2, 3, 6]);
        assert_eq!(orders(&PermGroup::alternating(5)), vec![60]);
        assert_eq!(orders(&PermGroup::symmetric(4)), vec![4, 12, 24]);
        let partial = PermGroup::symmetric(4).candidate_normal_subgroups(3);
        assert!(!partial.complete);
    }
}
