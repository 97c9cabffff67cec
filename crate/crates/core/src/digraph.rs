//! Finite digraphs and their combinatorial primitives.
//!
//! Vertices are `0..n`. The arc relation is irreflexive; it may be antisymmetric
//! (`Directed`), symmetric (`Undirected`) or neither (`Mixed`). Quotients and
//! underlying graphs leave the directed class, so all three live in one type.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sentinel used in the cached distance matrix.
const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    /// No pair of opposite arcs.
    Directed,
    /// Every arc has its reverse.
    Undirected,
    Mixed,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::Directed => "directed",
            SymmetryClass::Undirected => "undirected",
            SymmetryClass::Mixed => "mixed",
        })
    }
}

pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    adj: Vec<bool>,
    class: SymmetryClass,
    dist: OnceLock<Vec<u32>>,
}

impl Clone for Digraph {
    fn clone(&self) -> Self {
        Digraph {
            n: self.n,
            arcs: self.arcs.clone(),
            out: self.out.clone(),
            inn: self.inn.clone(),
            adj: self.adj.clone(),
            class: self.class,
            dist: OnceLock::new(),
        }
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("class", &self.class)
            .field("arcs", &self.arcs)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    SArc,
    SGeodesic,
    Circuit,
}

/// A vertex sequence `(v_0, ..., v_s)` whose consecutive pairs are arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub kind: WalkKind,
}

impl Walk {
    /// Number of arcs traversed.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }

    /// Closed, at least three arcs long, and no vertex repeated before closing.
    pub fn is_circuit(&self) -> bool {
        let s = self.len();
        if s < 3 || self.vertices[0] != self.vertices[s] {
            return false;
        }
        let mut seen = self.vertices[..s].to_vec();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

impl AsRef<[usize]> for Walk {
    fn as_ref(&self) -> &[usize] {
        &self.vertices
    }
}

impl Digraph {
    /// Builds a digraph on `n` vertices; duplicate arcs are merged.
    pub fn build(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        list.dedup();

        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut adj = vec![false; n * n];
        for &(u, v) in &list {
            out[u].push(v);
            inn[v].push(u);
            adj[u * n + v] = true;
        }
        for row in inn.iter_mut() {
            row.sort_unstable();
        }

        let mut has_pair = false;
        let mut has_single = false;
        for &(u, v) in &list {
            if adj[v * n + u] {
                has_pair = true;
            } else {
                has_single = true;
            }
        }
        let class = match (has_pair, has_single) {
            (true, false) => SymmetryClass::Undirected,
            (true, true) => SymmetryClass::Mixed,
            (false, _) => SymmetryClass::Directed,
        };

        Ok(Digraph {
            n,
            arcs: list,
            out,
            inn,
            adj,
            class,
            dist: OnceLock::new(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, []).expect("empty arc set is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, deduplicated arc list.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        self.class
    }

    pub fn is_directed(&self) -> bool {
        self.class == SymmetryClass::Directed
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// The common size `k` of every out- and in-neighbourhood, if there is one.
    pub fn valency(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let k = self.out[0].len();
        let regular = (0..self.n).all(|v| self.out[v].len() == k && self.inn[v].len() == k);
        regular.then_some(k)
    }

    /// `|Γ⁺(u) ∩ Γ⁺(v)|`.
    pub fn common_out_count(&self, u: usize, v: usize) -> usize {
        self.out[u].iter().filter(|&&w| self.has_arc(v, w)).count()
    }

    fn distance_matrix(&self) -> &[u32] {
        self.dist.get_or_init(|| {
            let n = self.n;
            let mut d = vec![UNREACHABLE; n * n];
            let mut queue = VecDeque::new();
            for s in 0..n {
                let row = &mut d[s * n..(s + 1) * n];
                row[s] = 0;
                queue.clear();
                queue.push_back(s);
                while let Some(u) = queue.pop_front() {
                    let du = row[u];
                    for &w in &self.out[u] {
                        if row[w] == UNREACHABLE {
                            row[w] = du + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
            d
        })
    }

    /// Directed distance; `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.distance_matrix()[u * self.n + v];
        (d != UNREACHABLE).then_some(d as usize)
    }

    pub(crate) fn distance_raw(&self, u: usize, v: usize) -> u32 {
        self.distance_matrix()[u * self.n + v]
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.distance_matrix().iter().all(|&d| d != UNREACHABLE)
    }

    pub fn diameter(&self) -> Result<usize> {
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        Ok(self.max_finite_distance())
    }

    /// Largest finite distance; equals the diameter when strongly connected.
    pub fn max_finite_distance(&self) -> usize {
        self.distance_matrix()
            .iter()
            .filter(|&&d| d != UNREACHABLE)
            .max()
            .copied()
            .unwrap_or(0) as usize
    }

    /// Γ⁺ᵢ(u): vertices at distance exactly `i` from `u`.
    pub fn sphere(&self, u: usize, i: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.distance(u, v) == Some(i))
            .collect()
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }

    /// Components of the underlying undirected graph, each sorted, ordered by minimum vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in self.out[u].iter().chain(&self.inn[u]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// All s-arcs in lexicographic order. Vertices may repeat.
    pub fn enumerate_s_arcs(&self, s: usize) -> Vec<Walk> {
        self.walks(s, false)
    }

    /// The s-arcs `(v_0, ..., v_s)` with `d(v_0, v_s) = s`, in lexicographic order.
    pub fn enumerate_s_geodesics(&self, s: usize) -> Vec<Walk> {
        self.walks(s, true)
    }

    fn walks(&self, s: usize, geodesic: bool) -> Vec<Walk> {
        let kind = if geodesic {
            WalkKind::SGeodesic
        } else {
            WalkKind::SArc
        };
        let mut result = Vec::new();
        let mut stack = Vec::with_capacity(s + 1);
        for v in 0..self.n {
            stack.push(v);
            self.extend_walk(&mut stack, s, geodesic, &mut |w| {
                result.push(Walk {
                    vertices: w.to_vec(),
                    kind,
                })
            });
            stack.pop();
        }
        result
    }

    /// Depth-first extension; for geodesics each prefix must itself be a geodesic,
    /// which prunes the search without changing the result.
    fn extend_walk(
        &self,
        stack: &mut Vec<usize>,
        s: usize,
        geodesic: bool,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        let depth = stack.len() - 1;
        if depth == s {
            emit(stack);
            return;
        }
        let last = stack[depth];
        for &w in &self.out[last] {
            if geodesic && self.distance_raw(stack[0], w) != (depth + 1) as u32 {
                continue;
            }
            stack.push(w);
            self.extend_walk(stack, s, geodesic, emit);
            stack.pop();
        }
    }

    /// Length of a shortest circuit (closed walk of length ≥ 3 with distinct vertices).
    pub fn girth(&self) -> Option<usize> {
        if self.class == SymmetryClass::Directed {
            // Without digons a shortest closed walk is a circuit of length ≥ 3.
            self.arcs
                .iter()
                .filter_map(|&(u, v)| self.distance(v, u).map(|d| d + 1))
                .min()
        } else {
            self.girth_by_search()
        }
    }

    fn girth_by_search(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut on_path = vec![false; self.n];
        for start in 0..self.n {
            on_path[start] = true;
            let mut path = vec![start];
            self.shortest_circuit_from(start, &mut path, &mut on_path, &mut best);
            on_path[start] = false;
        }
        (best != usize::MAX).then_some(best)
    }

    // Circuits are found once, from their minimum vertex.
    fn shortest_circuit_from(
        &self,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        best: &mut usize,
    ) {
        let last = *path.last().unwrap();
        let len = path.len();
        if len >= 3 && self.has_arc(last, start) {
            *best = (*best).min(len);
        }
        if len + 1 >= *best {
            return;
        }
        for &w in &self.out[last] {
            if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                self.shortest_circuit_from(start, path, on_path, best);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    /// `[U]`, relabelled to `0..|U|` in increasing order of `U`; returns the old→new map.
    pub fn induced_subdigraph(&self, subset: &[usize]) -> Result<(Digraph, Vec<Option<usize>>)> {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let mut map = vec![None; self.n];
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            map[v] = Some(i);
        }
        let arcs = self
            .arcs
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)));
        Ok((Digraph::build(verts.len(), arcs)?, map))
    }

    /// Symmetric closure of the arc relation.
    pub fn underlying_undirected(&self) -> Digraph {
        let arcs = self.arcs.iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
        Digraph::build(self.n, arcs).expect("closure of a valid arc set is valid")
    }

    /// Whether `images` (vertex → image) is a bijection preserving the arc set.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        if images.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &x in images {
            if x >= self.n || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        self.arcs
            .iter()
            .all(|&(u, v)| self.has_arc(images[u], images[v]))
    }

    /// Text form: `n <count>` followed by one `u v` line per arc.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.arcs {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut arcs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            if n.is_none() {
                if first != "n" {
                    return Err(Error::parse(line_no, "expected header `n <count>`"));
                }
                let count = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "missing vertex count"))?;
                n = Some(
                    count
                        .parse::<usize>()
                        .map_err(|e| Error::parse(line_no, format!("bad vertex count: {e}")))?,
                );
                if parts.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens after vertex count"));
                }
                continue;
            }
            let second = parts
                .next()
                .ok_or_else(|| Error::parse(line_no, "expected `u v`"))?;
            if parts.next().is_some() {
                return Err(Error::parse(line_no, "expected exactly two vertices"));
            }
            let parse_vertex = |t: &str| {
                t.parse::<usize>()
                    .map_err(|e| Error::parse(line_no, format!("bad vertex `{t}`: {e}")))
            };
            let (u, v) = (parse_vertex(first)?, parse_vertex(second)?);
            let n = n.unwrap();
            if u >= n || v >= n {
                return Err(Error::parse(
                    line_no,
                    format!("vertex out of range for n = {n}"),
                ));
            }
            if u == v {
                return Err(Error::parse(line_no, format!("loop arc at {u}")));
            }
            arcs.push((u, v));
        }
        let n = n.ok_or_else(|| Error::parse(1, "missing header `n <count>`"))?;
        Digraph::build(n, arcs)
    }
}

impl FromStr for Digraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Digraph::parse_text(s)
    }
}
