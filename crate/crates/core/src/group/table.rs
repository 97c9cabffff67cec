//! Abstract finite groups as multiplication tables.

use super::PermGroup;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::Permutation;

/// A finite group on element indices `0..order`, `mul[a * order + b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms. Associativity is checked on every triple up
    /// to `assoc_full_order`, and on a deterministic sample above it.
    pub fn from_mul(order: usize, mul: Vec<usize>, assoc_full_order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                mul.len()
            )));
        }
        if let Some(&x) = mul.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {x} out of range")));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let mut inverse = vec![0; order];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(Error::InvalidTable(format!(
                    "associativity fails on ({a}, {b}, {c})"
                )));
            }
            Ok(())
        };
        if order <= assoc_full_order {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // Spot check: a fixed stride through the triples.
            let total = order * order * order;
            let step = (total / (assoc_full_order.max(1).pow(2) * 4)).max(1) | 1;
            let mut t = 0;
            while t < total {
                check(t / (order * order), (t / order) % order, t % order)?;
                t += step;
            }
        }
        Ok(GroupTable {
            order,
            mul,
            identity,
            inverse,
        })
    }

    fn trusted(order: usize, mul: Vec<usize>, identity: usize) -> Self {
        let mut inverse = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == identity {
                    inverse[a] = b;
                    break;
                }
            }
        }
        GroupTable {
            order,
            mul,
            identity,
            inverse,
        }
    }

    /// `Z_n`, element `i` is the residue `i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::abelian(&[n])
    }

    /// `Z_{f1} × ... × Z_{fk}`; element indices are mixed-radix with the last
    /// factor varying fastest.
    pub fn abelian(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::BadParameter(format!("abelian factors {factors:?}")));
        }
        let order: usize = factors.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; factors.len()];
            for (i, &f) in factors.iter().enumerate().rev() {
                d[i] = x % f;
                x /= f;
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &f)| acc * f + x);
        let mut mul = vec![0; order * order];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<usize> = da
                    .iter()
                    .zip(&db)
                    .zip(factors)
                    .map(|((&x, &y), &f)| (x + y) % f)
                    .collect();
                mul[a * order + b] = index(&sum);
            }
        }
        Ok(Self::trusted(order, mul, 0))
    }

    /// Dihedral group of order `2n`: index `i < n` is `r^i`, index `n + i` is `s·r^i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParameter(format!("dihedral:{n}")));
        }
        let order = 2 * n;
        let mut mul = vec![0; order * order];
        // (s^a r^i)(s^b r^j) = s^(a+b) r^(j + (-1)^b i)
        for x in 0..order {
            let (a, i) = (x / n, x % n);
            for y in 0..order {
                let (b, j) = (y / n, y % n);
                let rot = if b == 0 { (i + j) % n } else { (j + n - i) % n };
                mul[x * order + y] = ((a + b) % 2) * n + rot;
            }
        }
        Ok(Self::trusted(order, mul, 0))
    }

    /// Regular representation of a small permutation group: elements sorted,
    /// indexed by position.
    pub fn from_perm_group(group: &PermGroup, max_order: usize) -> Result<Self> {
        if group.order() > max_order as u128 {
            return Err(Error::BoundExceeded(format!(
                "group of order {} above {max_order}",
                group.order()
            )));
        }
        let mut elems: Vec<Permutation> = group.elements().collect();
        elems.sort();
        let order = elems.len();
        let index = |g: &Permutation| elems.binary_search(g).expect("closed under products");
        let mut mul = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = index(&elems[a].mul(&elems[b]));
            }
        }
        let identity = index(&Permutation::identity(group.degree()));
        Ok(Self::trusted(order, mul, identity))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Least `r ≥ 1` with `x^r = 1`.
    pub fn order_of(&self, x: usize) -> Result<usize> {
        if x >= self.order {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: self.order,
            });
        }
        let mut r = 1;
        let mut y = x;
        while y != self.identity {
            y = self.product(y, x);
            r += 1;
        }
        Ok(r)
    }

    /// Membership mask of the subgroup generated by `set`.
    pub fn generated_subgroup(&self, set: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &s in set {
                let y = self.product(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        member
    }

    pub fn generates(&self, set: &[usize]) -> bool {
        self.generated_subgroup(set).iter().all(|&m| m)
    }

    /// Greedy generating set taken from the elements in index order.
    pub fn generators(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order).collect();
        self.generating_subset(&all)
            .expect("the whole group generates")
    }

    /// Greedy generating set drawn from `pool` in order; `None` if `pool`
    /// does not generate.
    fn generating_subset(&self, pool: &[usize]) -> Option<Vec<usize>> {
        let mut gens = Vec::new();
        let mut member = self.generated_subgroup(&gens);
        for &x in pool {
            if !member[x] {
                gens.push(x);
                member = self.generated_subgroup(&gens);
            }
        }
        member.iter().all(|&m| m).then_some(gens)
    }

    /// Right translation `h ↦ h·g` as a permutation of the elements.
    pub fn right_translation(&self, g: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order).map(|h| self.product(h, g)).collect())
    }

    /// All automorphisms of the group, as element maps, sorted.
    pub fn automorphisms(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        self.automorphisms_filtered(None, limits)
    }

    /// Automorphisms `α` with `α(S) = S`.
    pub fn automorphisms_preserving(
        &self,
        set: &[usize],
        limits: &Limits,
    ) -> Result<Vec<Vec<usize>>> {
        self.automorphisms_filtered(Some(set), limits)
    }

    fn automorphisms_filtered(
        &self,
        preserve: Option<&[usize]>,
        limits: &Limits,
    ) -> Result<Vec<Vec<usize>>> {
        if self.order > limits.aut_table_order {
            return Err(Error::BoundExceeded(format!(
                "group order {} above automorphism search bound {}",
                self.order, limits.aut_table_order
            )));
        }
        let mut in_set = vec![false; self.order];
        for &x in preserve.unwrap_or(&[]) {
            if x >= self.order {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.order,
                });
            }
            in_set[x] = true;
        }
        // When S generates, choose generators inside S: their images must stay in S.
        let (gens, from_set) = match preserve.and_then(|s| self.generating_subset(s)) {
            Some(g) => (g, true),
            None => (self.generators(), false),
        };
        let orders: Vec<usize> = (0..self.order).map(|x| self.order_of(x).unwrap()).collect();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                (0..self.order)
                    .filter(|&y| orders[y] == orders[g] && (!from_set || in_set[y]))
                    .collect()
            })
            .collect();

        let mut results = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        let mut budget = limits.search_nodes;
        self.extend_automorphism(&gens, &candidates, &mut images, &mut budget, &mut |map| {
            if preserve.is_none_or(|s| s.iter().all(|&x| in_set[map[x]])) {
                results.push(map.to_vec());
            }
        })?;
        results.sort();
        Ok(results)
    }

    fn extend_automorphism(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        budget: &mut u64,
        emit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        if *budget == 0 {
            return Err(Error::BoundExceeded("automorphism search budget".into()));
        }
        *budget -= 1;
        let k = images.len();
        if k > 0 && self.partial_map(&gens[..k], images).is_none() {
            return Ok(());
        }
        if k == gens.len() {
            if let Some(map) = self.partial_map(gens, images) {
                emit(&map);
            }
            return Ok(());
        }
        for &y in &candidates[k] {
            images.push(y);
            self.extend_automorphism(gens, candidates, images, budget, emit)?;
            images.pop();
        }
        Ok(())
    }

    /// Extends `gens[i] ↦ images[i]` multiplicatively over `⟨gens⟩`. Returns the
    /// map (unset entries `usize::MAX`) if it is a well-defined injective
    /// homomorphism on that subgroup; full length when `gens` generate.
    fn partial_map(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        let mut hit = vec![false; self.order];
        map[self.identity] = self.identity;
        hit[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.product(x, g);
                let fy = self.product(map[x], img);
                if map[y] == usize::MAX {
                    if std::mem::replace(&mut hit[fy], true) {
                        return None;
                    }
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Text form: `order m` then `m` rows of `m` indices.
    pub fn to_text(&self) -> String {
        let mut s = format!("order {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.product(a, b).to_string())
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str, assoc_full_order: usize) -> Result<Self> {
        let mut order = None;
        let mut mul = Vec::new();
        let mut rows = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match order {
                None => {
                    let m = line
                        .strip_prefix("order")
                        .map(str::trim)
                        .ok_or_else(|| Error::parse(line_no, "expected header `order <m>`"))?;
                    order = Some(
                        m.parse::<usize>()
                            .map_err(|e| Error::parse(line_no, format!("bad order: {e}")))?,
                    );
                }
                Some(m) => {
                    let row = line
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|e| Error::parse(line_no, format!("bad entry `{t}`: {e}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() != m {
                        return Err(Error::parse(
                            line_no,
                            format!("expected {m} entries, found {}", row.len()),
                        ));
                    }
                    rows += 1;
                    if rows > m {
                        return Err(Error::parse(line_no, "too many rows"));
                    }
                    mul.extend(row);
                }
            }
        }
        let order = order.ok_or_else(|| Error::parse(1, "missing header `order <m>`"))?;
        if rows != order {
            return Err(Error::parse(
                text.lines().count(),
                format!("expected {order} rows, found {rows}"),
            ));
        }
        Self::from_mul(order, mul, assoc_full_order)
    }
}
