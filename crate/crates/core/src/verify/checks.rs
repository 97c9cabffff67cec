use super::{CheckId, CheckResult, Instance, Status, Witness};
use crate::construct::{complete, quotient_by_normal};
use crate::digraph::Digraph;
use crate::group::normal::is_prime;
use crate::group::PermGroup;
use crate::symmetry::{
    is_distance_transitive, s_arc_transitive_unchecked, s_geodesic_transitive_unchecked,
};

const NEEDS_CONNECTED: &str = "requires a strongly connected digraph of the directed class";
const NEEDS_DIRECTED: &str = "requires a digraph of the directed class";
const NEEDS_ARC_TRANSITIVE: &str = "group is not arc-transitive";
const NEEDS_GEODESIC_2: &str = "group is not 2-geodesic-transitive";

fn geodesic_2(inst: &Instance) -> bool {
    inst.is_arc_transitive() && inst.is_geodesic_transitive(2)
}

fn is_directed(g: &Digraph) -> bool {
    g.is_directed()
}

/// Every 2-arc `(x, y, z)` has `d(x, z) = 2`.
fn every_2_arc_is_geodesic(g: &Digraph) -> bool {
    g.enumerate_s_arcs(2)
        .iter()
        .all(|w| g.distance(w.vertices[0], w.vertices[2]) == Some(2))
}

fn first_arc(g: &Digraph, pred: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    g.arcs().iter().copied().find(|&(u, v)| pred(u, v))
}

/// The checks about a single arc and its out-neighbourhoods.
pub fn check_arc_local_constraints(inst: &Instance) -> Vec<CheckResult> {
    let ids = [
        CheckId::L2_1a,
        CheckId::L2_1b,
        CheckId::L4_1,
        CheckId::L4_4,
        CheckId::L4_5,
        CheckId::L4_7,
    ];
    let g = inst.digraph();
    if !inst.is_connected_digraph() {
        return ids
            .map(|id| CheckResult::not_applicable(id, NEEDS_CONNECTED))
            .to_vec();
    }
    if !inst.is_arc_transitive() {
        return ids
            .map(|id| CheckResult::not_applicable(id, NEEDS_ARC_TRANSITIVE))
            .to_vec();
    }
    let r = g
        .valency()
        .expect("arc-transitive connected digraphs are regular");
    let common = |u: usize, v: usize| g.common_out_count(u, v);
    let mut out = Vec::with_capacity(ids.len());

    // Γ⁺(u) = {v} ∪ (Γ⁺(u) ∩ Γ⁺(v)) exactly when the common count is r - 1.
    out.push(if r < 2 {
        CheckResult::not_applicable(CheckId::L2_1a, "valency below 2")
    } else {
        match first_arc(g, |u, v| common(u, v) == r - 1) {
            Some((u, v)) => CheckResult::fail(
                CheckId::L2_1a,
                Witness::Arc { u, v },
                "out-neighbourhood of u is v together with common out-neighbours",
            ),
            None => CheckResult::pass(CheckId::L2_1a),
        }
    });

    let all_geodesic = every_2_arc_is_geodesic(g);
    out.push(
        match first_arc(g, |u, v| (common(u, v) == 0) != all_geodesic) {
            Some((u, v)) => CheckResult::fail(
                CheckId::L2_1b,
                Witness::Arc { u, v },
                format!(
                "common out-neighbourhood empty = {}, every 2-arc a 2-geodesic = {all_geodesic}",
                common(u, v) == 0
            ),
            ),
            None => CheckResult::pass(CheckId::L2_1b),
        },
    );

    out.push(if r < 2 {
        CheckResult::not_applicable(CheckId::L4_1, "valency below 2")
    } else {
        match first_arc(g, |u, v| common(u, v) == r - 1) {
            Some((u, v)) => CheckResult::fail(
                CheckId::L4_1,
                Witness::Arc { u, v },
                format!("common out-neighbour count {} = r - 1", r - 1),
            ),
            None => CheckResult::pass(CheckId::L4_1),
        }
    });

    out.push(check_l4_4(inst, r));

    out.push(if r < 4 {
        CheckResult::not_applicable(CheckId::L4_5, "valency below 4")
    } else {
        match first_arc(g, |u, v| common(u, v) == r - 2) {
            Some((u, v)) => CheckResult::fail(
                CheckId::L4_5,
                Witness::Arc { u, v },
                format!("common out-neighbour count {} = r - 2", r - 2),
            ),
            None => CheckResult::pass(CheckId::L4_5),
        }
    });

    out.push(if r != 5 {
        CheckResult::not_applicable(CheckId::L4_7, "valency is not 5")
    } else {
        match first_arc(g, |u, v| common(u, v) == 2) {
            None => CheckResult::not_applicable(
                CheckId::L4_7,
                "no arc with common out-neighbour count 2",
            ),
            Some((u, v)) if inst.is_geodesic_transitive(2) => CheckResult::fail(
                CheckId::L4_7,
                Witness::Arc { u, v },
                "common out-neighbour count 2 yet 2-geodesic-transitive",
            ),
            Some(_) => CheckResult::pass(CheckId::L4_7),
        }
    });
    out
}

/// The out-neighbourhood of `u` splits into weak components of equal size at least 3.
fn neighbourhood_is_k_sigma(g: &Digraph, u: usize) -> bool {
    let (sub, _) = g
        .induced_subdigraph(g.out_neighbors(u))
        .expect("out-neighbours are vertices");
    let comps = sub.weak_components();
    let e = comps[0].len();
    e >= 3 && comps.iter().all(|c| c.len() == e)
}

fn check_l4_4(inst: &Instance, r: usize) -> CheckResult {
    let id = CheckId::L4_4;
    let g = inst.digraph();
    if r < 3 {
        return CheckResult::not_applicable(id, "valency below 3");
    }
    if !inst.is_geodesic_transitive(2) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    // Components of [Γ⁺(u)] are isomorphic because G_u is transitive on Γ⁺(u).
    let applies: Vec<bool> = (0..g.n())
        .map(|u| r == 4 || neighbourhood_is_k_sigma(g, u))
        .collect();
    if !applies.iter().any(|&a| a) {
        return CheckResult::not_applicable(id, "out-neighbourhoods are not a union of copies of a connected digraph on at least 3 vertices");
    }
    match first_arc(g, |u, v| applies[u] && g.common_out_count(u, v) == 1) {
        Some((u, v)) => {
            CheckResult::fail(id, Witness::Arc { u, v }, "common out-neighbour count 1")
        }
        None => {
            let route = if r == 4 {
                "valency 4"
            } else {
                "out-neighbourhood is kΣ"
            };
            CheckResult::pass(id).with_note(route)
        }
    }
}

/// 2-geodesic-transitive iff 2-arc-transitive, for arc-transitive digraphs of valency 2 to 5.
pub fn check_small_valency(inst: &Instance) -> CheckResult {
    let id = CheckId::T1_4i;
    let g = inst.digraph();
    if !is_directed(g) {
        return CheckResult::not_applicable(id, NEEDS_DIRECTED);
    }
    if !inst.is_arc_transitive() {
        return CheckResult::not_applicable(id, NEEDS_ARC_TRANSITIVE);
    }
    let r = match g.valency() {
        Some(r @ 2..=5) => r,
        _ => return CheckResult::not_applicable(id, "valency outside 2..=5"),
    };
    let geo = inst.is_geodesic_transitive(2);
    let arc = inst.is_two_arc_transitive();
    let detail = format!("valency {r}: 2-geodesic-transitive = {geo}, 2-arc-transitive = {arc}");
    if geo == arc {
        CheckResult::pass(id).with_note(detail)
    } else {
        CheckResult::fail(id, Witness::Instance, detail)
    }
}

/// Points are vertices and blocks are out-neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignParameters {
    pub points: usize,
    /// Common block size, if all out-neighbourhoods have the same size.
    pub block_size: Option<usize>,
    /// Common number of blocks through a pair of points, if constant.
    pub lambda: Option<usize>,
    /// A pair whose count differs from that of the first pair.
    pub unbalanced_pair: Option<(usize, usize)>,
}

impl DesignParameters {
    /// `m` when the parameters are `(4m − 1, 2m − 1, m − 1)`.
    pub fn hadamard_m(&self) -> Option<usize> {
        let v = self.points;
        if !(v + 1).is_multiple_of(4) {
            return None;
        }
        let m = (v + 1) / 4;
        (self.block_size == Some(2 * m - 1) && self.lambda == Some(m - 1)).then_some(m)
    }
}

pub fn design_parameters(g: &Digraph) -> DesignParameters {
    let n = g.n();
    let block_size = g.valency().or_else(|| {
        let k = g.out_degree(0);
        (0..n).all(|v| g.out_degree(v) == k).then_some(k)
    });
    let through = |x: usize, y: usize| {
        (0..n)
            .filter(|&b| g.has_arc(b, x) && g.has_arc(b, y))
            .count()
    };
    let mut lambda = None;
    let mut unbalanced_pair = None;
    'pairs: for x in 0..n {
        for y in x + 1..n {
            let c = through(x, y);
            match lambda {
                None => lambda = Some(c),
                Some(l) if l != c => {
                    unbalanced_pair = Some((x, y));
                    break 'pairs;
                }
                _ => {}
            }
        }
    }
    if unbalanced_pair.is_some() {
        lambda = None;
    }
    DesignParameters {
        points: n,
        block_size,
        lambda,
        unbalanced_pair,
    }
}

/// Diameter 2 and 2-geodesic-transitive: distance-transitive and a Hadamard 2-design.
pub fn check_hadamard_design(inst: &Instance) -> CheckResult {
    let id = CheckId::T1_4ii;
    let g = inst.digraph();
    if !inst.is_connected_digraph() {
        return CheckResult::not_applicable(id, NEEDS_CONNECTED);
    }
    if !inst.is_arc_transitive() {
        return CheckResult::not_applicable(id, NEEDS_ARC_TRANSITIVE);
    }
    if g.max_finite_distance() != 2 {
        return CheckResult::not_applicable(id, "diameter is not 2");
    }
    if !inst.is_geodesic_transitive(2) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    if !is_distance_transitive(g, inst.group())
        .expect("validated automorphisms on a connected digraph")
    {
        return CheckResult::fail(id, Witness::Instance, "not distance-transitive");
    }
    let n = g.n();
    if !(n + 1).is_multiple_of(4) {
        return CheckResult::fail(
            id,
            Witness::Instance,
            format!("{n} points is not of the form 4m - 1"),
        );
    }
    let m = (n + 1) / 4;
    let d = design_parameters(g);
    if d.block_size != Some(2 * m - 1) {
        return CheckResult::fail(
            id,
            Witness::Instance,
            format!("block size {:?}, expected {}", d.block_size, 2 * m - 1),
        );
    }
    if let Some((x, y)) = d.unbalanced_pair {
        return CheckResult::fail(id, Witness::Pair { x, y }, "pair counts are not constant");
    }
    if d.lambda.is_some_and(|l| l != m - 1) {
        return CheckResult::fail(
            id,
            Witness::Pair { x: 0, y: 1 },
            format!("lambda {:?}, expected {}", d.lambda, m - 1),
        );
    }
    let result =
        CheckResult::pass(id).with_note(format!("2-({n}, {}, {}) design", 2 * m - 1, m - 1));
    if m == 1 {
        result.with_note("degenerate case m = 1")
    } else {
        result
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Maximality {
    Yes,
    No,
    Unknown,
}

/// The normal subgroups a check ranges over: the supplied one after
/// validation, or every discovered candidate plus the trivial group.
fn normals(inst: &Instance, normal: Option<&PermGroup>) -> Result<(Vec<PermGroup>, bool), String> {
    let g = inst.group();
    match normal {
        Some(n) => {
            if n.degree() != g.degree() || !n.is_subgroup_of(g) {
                return Err("N is not a subgroup of G".into());
            }
            if !g.is_normal(n).unwrap_or(false) {
                return Err("N is not normal in G".into());
            }
            Ok((vec![n.clone()], true))
        }
        None => {
            let c = inst.candidates();
            let mut all = c.subgroups.clone();
            all.push(PermGroup::trivial(g.degree()));
            Ok((all, c.complete))
        }
    }
}

/// Whether `n` is maximal among normal subgroups with at least `min_orbits` orbits.
fn maximality(inst: &Instance, n: &PermGroup, min_orbits: usize) -> Maximality {
    if n.orbits_count() < min_orbits {
        return Maximality::No;
    }
    let c = inst.candidates();
    let larger = c
        .subgroups
        .iter()
        .any(|m| m.order() > n.order() && n.is_subgroup_of(m) && m.orbits_count() >= min_orbits);
    if larger {
        Maximality::No
    } else if c.complete {
        Maximality::Yes
    } else {
        Maximality::Unknown
    }
}

fn incomplete_note(inst: &Instance) -> String {
    format!(
        "normal subgroup candidates incomplete ({} found within budget)",
        inst.candidates().subgroups.len()
    )
}

/// Shared shape of the normal-subgroup checks: validate, select, evaluate, aggregate.
fn over_normals(
    id: CheckId,
    inst: &Instance,
    normal: Option<&PermGroup>,
    select: impl Fn(&PermGroup) -> Result<(), String>,
    evaluate: impl Fn(&PermGroup) -> Option<CheckResult>,
) -> CheckResult {
    let (pool, complete) = match normals(inst, normal) {
        Ok(p) => p,
        Err(note) => return CheckResult::not_applicable(id, note),
    };
    let mut examined = 0;
    let mut reasons = Vec::new();
    let mut extra = Vec::new();
    for n in &pool {
        if let Err(reason) = select(n) {
            reasons.push(reason);
            continue;
        }
        examined += 1;
        if let Some(r) = evaluate(n) {
            match r.status {
                Status::Fail => return r,
                Status::Incomplete => extra.extend(r.notes),
                _ => {}
            }
        }
    }
    if examined == 0 {
        if !complete {
            return CheckResult::incomplete(id, incomplete_note(inst));
        }
        let note = if normal.is_some() {
            reasons.pop().unwrap_or_default()
        } else {
            "no normal subgroup satisfies the hypothesis".to_string()
        };
        return CheckResult::not_applicable(id, note);
    }
    let mut result = if !extra.is_empty() {
        let mut r = CheckResult::incomplete(id, extra.remove(0));
        r.notes.extend(extra);
        r
    } else if !complete {
        CheckResult::incomplete(id, incomplete_note(inst))
    } else {
        CheckResult::pass(id)
    };
    result
        .notes
        .push(format!("{examined} normal subgroup(s) examined"));
    result
}

/// No orbit of a nontrivial intransitive normal subgroup contains an arc.
pub fn check_no_arc_in_orbit(inst: &Instance, normal: Option<&PermGroup>) -> CheckResult {
    let id = CheckId::L3_1;
    let g = inst.digraph();
    if !inst.is_connected_digraph() {
        return CheckResult::not_applicable(id, NEEDS_CONNECTED);
    }
    if !inst.is_arc_transitive() {
        return CheckResult::not_applicable(id, NEEDS_ARC_TRANSITIVE);
    }
    over_normals(
        id,
        inst,
        normal,
        |n| {
            if n.is_trivial() {
                Err("N is trivial".into())
            } else if n.is_transitive() {
                Err("N is transitive".into())
            } else {
                Ok(())
            }
        },
        |n| {
            let orbits = n.orbit_partition();
            first_arc(g, |u, v| orbits.block_of(u) == orbits.block_of(v)).map(|(u, v)| {
                CheckResult::fail(id, Witness::Arc { u, v }, "arc inside an orbit of N")
                    .with_note(format!("N = ⟨{}⟩", generators_text(n)))
            })
        },
    )
}

fn generators_text(n: &PermGroup) -> String {
    n.generators()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// A nontrivial normal subgroup with two orbits: bipartite on those orbits and 2-arc-transitive.
pub fn check_two_orbit_normal(inst: &Instance, normal: Option<&PermGroup>) -> CheckResult {
    let id = CheckId::L3_2;
    let g = inst.digraph();
    if !is_directed(g) {
        return CheckResult::not_applicable(id, NEEDS_DIRECTED);
    }
    if !geodesic_2(inst) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    over_normals(
        id,
        inst,
        normal,
        |n| {
            if n.is_trivial() {
                Err("N is trivial".into())
            } else if n.orbits_count() != 2 {
                Err(format!("N has {} orbits, not 2", n.orbits_count()))
            } else {
                Ok(())
            }
        },
        |n| {
            let orbits = n.orbit_partition();
            if let Some((u, v)) = first_arc(g, |u, v| orbits.block_of(u) == orbits.block_of(v)) {
                return Some(CheckResult::fail(
                    id,
                    Witness::Arc { u, v },
                    "not bipartite on the orbits of N",
                ));
            }
            (!inst.is_two_arc_transitive())
                .then(|| CheckResult::fail(id, Witness::subgroup(n), "not 2-arc-transitive"))
        },
    )
}

fn is_complete_undirected(g: &Digraph) -> bool {
    complete(g.n()).is_ok_and(|k| k == *g)
}

/// Quotient by a normal subgroup with at least 3 orbits is directed or undirected complete.
pub fn check_quotient_class(inst: &Instance, normal: Option<&PermGroup>) -> CheckResult {
    let id = CheckId::L3_3;
    if !inst.is_connected_digraph() {
        return CheckResult::not_applicable(id, NEEDS_CONNECTED);
    }
    if !geodesic_2(inst) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    over_normals(id, inst, normal, at_least_three_orbits, |n| {
        let q = match quotient_by_normal(inst.digraph(), inst.group(), n) {
            Ok(q) => q,
            Err(e) => return Some(CheckResult::incomplete(id, format!("quotient failed: {e}"))),
        };
        let ok = q.quotient.is_directed() || is_complete_undirected(&q.quotient);
        (!ok).then(|| {
            CheckResult::fail(
                id,
                Witness::subgroup(n),
                format!(
                    "quotient is {} and not complete",
                    q.quotient.symmetry_class()
                ),
            )
        })
    })
}

fn at_least_three_orbits(n: &PermGroup) -> Result<(), String> {
    let k = n.orbits_count();
    if k < 3 {
        Err(format!("N has {k} orbits, fewer than 3"))
    } else {
        Ok(())
    }
}

/// Quotients by normal subgroups with at least 3 orbits: class, transitivity
/// of the image and, for maximal ones, quasiprimitivity of the image.
pub fn check_quotient_theorem(inst: &Instance, normal: Option<&PermGroup>) -> CheckResult {
    let id = CheckId::T1_1;
    if !inst.is_connected_digraph() {
        return CheckResult::not_applicable(id, NEEDS_CONNECTED);
    }
    if !geodesic_2(inst) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    let supplied = normal.is_some();
    over_normals(
        id,
        inst,
        normal,
        |n| {
            at_least_three_orbits(n)?;
            if !supplied && maximality(inst, n, 3) == Maximality::No {
                return Err("N is not maximal with at least 3 orbits".into());
            }
            Ok(())
        },
        |n| quotient_conclusions(inst, n),
    )
}

fn quotient_conclusions(inst: &Instance, n: &PermGroup) -> Option<CheckResult> {
    let id = CheckId::T1_1;
    let fail = |note: String| Some(CheckResult::fail(id, Witness::subgroup(n), note));
    let q = match quotient_by_normal(inst.digraph(), inst.group(), n) {
        Ok(q) => q,
        Err(e) => return Some(CheckResult::incomplete(id, format!("quotient failed: {e}"))),
    };
    let quo = &q.quotient;
    let image = q.image.as_ref().expect("group supplied");
    let complete_graph = is_complete_undirected(quo);
    if !quo.is_directed() && !complete_graph {
        return fail(format!(
            "quotient is {} and not complete",
            quo.symmetry_class()
        ));
    }
    if !quo.is_strongly_connected() {
        return fail("quotient is not connected".into());
    }
    let s = inst.max_geodesic_s();
    let s_quo = s.min(quo.max_finite_distance());
    if !s_geodesic_transitive_unchecked(quo, image, s_quo) {
        return fail(format!(
            "quotient is not ({s_quo})-geodesic-transitive under G/N"
        ));
    }

    let mut pending = Vec::new();
    match maximality(inst, n, 3) {
        Maximality::Yes => {
            let limits = inst.limits();
            match (
                image.is_quasiprimitive_with(limits),
                image.is_biquasiprimitive_with(limits),
            ) {
                (Ok(false), Ok(false)) => {
                    return fail(
                        "G/N is neither quasiprimitive nor bi-quasiprimitive on the quotient"
                            .into(),
                    )
                }
                (Err(e), _) | (_, Err(e)) => {
                    pending.push(format!("quasiprimitivity undecided: {e}"))
                }
                _ => {}
            }
        }
        Maximality::Unknown => pending.push(format!(
            "maximality of N not certified: {}",
            incomplete_note(inst)
        )),
        Maximality::No => {}
    }

    if !inst.is_two_arc_transitive() {
        match maximality(inst, n, 2) {
            Maximality::Yes => {
                match image.is_quasiprimitive_with(inst.limits()) {
                    Ok(true) => {}
                    Ok(false) => {
                        return fail("maximal N with 2-geodesic- but not 2-arc-transitive G: G/N is not quasiprimitive on the quotient".into())
                    }
                    Err(e) => pending.push(format!("quasiprimitivity undecided: {e}")),
                }
                let shape = if quo.is_directed() {
                    s_geodesic_transitive_unchecked(quo, image, 2)
                } else {
                    complete_graph && s_arc_transitive_unchecked(quo, image, 1)
                };
                if !shape {
                    return fail(
                        "maximal N with 2-geodesic- but not 2-arc-transitive G: quotient is neither a 2-geodesic-transitive digraph nor an arc-transitive complete graph"
                            .into(),
                    );
                }
            }
            Maximality::Unknown => {
                pending.push("maximality with at least 2 orbits not certified".into())
            }
            Maximality::No => {}
        }
    }

    if pending.is_empty() {
        None
    } else {
        let mut r = CheckResult::incomplete(id, pending.remove(0));
        r.notes.extend(pending);
        Some(r)
    }
}

/// A nontrivial regular normal subgroup forces a circuit.
pub fn check_regular_normal(inst: &Instance, normal: Option<&PermGroup>) -> CheckResult {
    let id = CheckId::T1_2;
    let g = inst.digraph();
    if !is_directed(g) {
        return CheckResult::not_applicable(id, NEEDS_DIRECTED);
    }
    if !geodesic_2(inst) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    let circuit = g.valency() == Some(1) && g.is_strongly_connected();
    over_normals(
        id,
        inst,
        normal,
        |n| {
            if n.is_trivial() {
                Err("N is trivial".into())
            } else if !n.is_regular() {
                Err("N is not regular".into())
            } else {
                Ok(())
            }
        },
        |n| {
            (!circuit).then(|| {
                CheckResult::fail(
                    id,
                    Witness::subgroup(n),
                    "regular normal subgroup but not a circuit",
                )
            })
        },
    )
}

/// Soluble, 2-geodesic-transitive, quasiprimitive or bi-quasiprimitive: a circuit of length 4 or a prime.
pub fn check_soluble_base(inst: &Instance) -> CheckResult {
    let id = CheckId::P3_4;
    let g = inst.digraph();
    let group = inst.group();
    if !inst.is_connected_digraph() {
        return CheckResult::not_applicable(id, NEEDS_CONNECTED);
    }
    if !geodesic_2(inst) {
        return CheckResult::not_applicable(id, NEEDS_GEODESIC_2);
    }
    if !group.is_soluble() {
        return CheckResult::not_applicable(id, "G is not soluble");
    }
    let limits = inst.limits();
    let kind = match (
        group.is_quasiprimitive_with(limits),
        group.is_biquasiprimitive_with(limits),
    ) {
        (Ok(true), _) => "quasiprimitive",
        (_, Ok(true)) => "bi-quasiprimitive",
        (Ok(false), Ok(false)) => {
            return CheckResult::not_applicable(
                id,
                "G is neither quasiprimitive nor bi-quasiprimitive",
            )
        }
        (Err(e), _) | (_, Err(e)) => {
            return CheckResult::incomplete(id, format!("quasiprimitivity undecided: {e}"))
        }
    };
    let n = g.n();
    if g.valency() == Some(1) && (n == 4 || is_prime(n as u64)) {
        CheckResult::pass(id).with_note(format!("G {kind}; circuit of length {n}"))
    } else {
        CheckResult::fail(
            id,
            Witness::Instance,
            format!("G {kind} but valency {:?} on {n} vertices", g.valency()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        cayley_holomorph_action, circuit, paley_tournament, translation_group, CayleySpec,
    };
    use crate::group::GroupTable;
    use crate::limits::Limits;
    use crate::perm::Permutation;
    use crate::verify::run_check;

    fn aut(g: Digraph) -> Instance {
        Instance::with_automorphisms(g, Limits::default()).unwrap()
    }

    fn status(r: &CheckResult) -> Status {
        r.status
    }

    fn by_id(rs: &[CheckResult], id: CheckId) -> &CheckResult {
        rs.iter().find(|r| r.id == id).unwrap()
    }

    fn rot(n: usize, k: usize) -> PermGroup {
        let images = (0..n).map(|i| (i + k) % n).collect();
        PermGroup::new(vec![Permutation::from_images(images).unwrap()]).unwrap()
    }

    #[test]
    fn local_constraints_on_paley() {
        let rs = check_arc_local_constraints(&aut(paley_tournament(7).unwrap()));
        assert_eq!(status(by_id(&rs, CheckId::L4_1)), Status::Pass);
        assert_eq!(status(by_id(&rs, CheckId::L2_1b)), Status::Pass);
        assert_eq!(status(by_id(&rs, CheckId::L4_5)), Status::NotApplicable);
    }

    #[test]
    fn local_constraints_on_circuit_and_k4() {
        let rs = check_arc_local_constraints(&aut(circuit(6).unwrap()));
        assert_eq!(status(by_id(&rs, CheckId::L2_1b)), Status::Pass);
        assert_eq!(status(by_id(&rs, CheckId::L2_1a)), Status::NotApplicable);
        let rs = check_arc_local_constraints(&aut(complete(4).unwrap()));
        assert!(rs.iter().all(|r| r.status == Status::NotApplicable));
    }

    #[test]
    fn small_valency_examples() {
        assert_eq!(
            check_small_valency(&aut(paley_tournament(7).unwrap())).status,
            Status::Pass
        );
        let c5 = aut(circuit(5).unwrap());
        assert_eq!(check_small_valency(&c5).status, Status::NotApplicable);
        let spec = CayleySpec::new(GroupTable::cyclic(11).unwrap(), vec![1, 3, 9]).unwrap();
        let inst = aut(crate::construct::cayley_digraph(&spec));
        assert_eq!(inst.group().order(), 11);
        assert!(!inst.is_geodesic_transitive(2) && !inst.is_two_arc_transitive());
        assert_eq!(check_small_valency(&inst).status, Status::NotApplicable);
    }

    #[test]
    fn orbit_checks_on_c6() {
        let c6 =
            Instance::new(circuit(6).unwrap(), PermGroup::cyclic(6), Limits::default()).unwrap();
        assert_eq!(
            check_no_arc_in_orbit(&c6, Some(&rot(6, 3))).status,
            Status::Pass
        );
        assert_eq!(
            check_two_orbit_normal(&c6, Some(&rot(6, 2))).status,
            Status::Pass
        );
        assert_eq!(
            check_no_arc_in_orbit(&c6, Some(&rot(6, 1))).status,
            Status::NotApplicable
        );
        assert_eq!(check_no_arc_in_orbit(&c6, None).status, Status::Pass);
    }

    #[test]
    fn quotient_reduction_examples() {
        let c12 = Instance::new(
            circuit(12).unwrap(),
            PermGroup::cyclic(12),
            Limits::default(),
        )
        .unwrap();
        assert_eq!(
            check_quotient_theorem(&c12, Some(&rot(12, 4))).status,
            Status::Pass
        );
        let c6 =
            Instance::new(circuit(6).unwrap(), PermGroup::cyclic(6), Limits::default()).unwrap();
        assert_eq!(
            check_quotient_theorem(&c6, Some(&rot(6, 3))).status,
            Status::Pass
        );
        assert_eq!(
            check_quotient_theorem(&c6, Some(&rot(6, 2))).status,
            Status::NotApplicable
        );
        assert_eq!(check_quotient_theorem(&c6, None).status, Status::Pass);
        assert_eq!(check_quotient_class(&c6, None).status, Status::Pass);
    }

    #[test]
    fn regular_normal_examples() {
        let spec = CayleySpec::new(GroupTable::cyclic(5).unwrap(), vec![1]).unwrap();
        let hol = cayley_holomorph_action(&spec, &Limits::default()).unwrap();
        let inst = Instance::new(circuit(5).unwrap(), hol, Limits::default()).unwrap();
        let n = translation_group(spec.table());
        assert_eq!(check_regular_normal(&inst, Some(&n)).status, Status::Pass);
        let s4 = aut(complete(4).unwrap());
        assert_eq!(
            check_regular_normal(&s4, None).status,
            Status::NotApplicable
        );
    }

    #[test]
    fn soluble_base_examples() {
        let c5 =
            Instance::new(circuit(5).unwrap(), PermGroup::cyclic(5), Limits::default()).unwrap();
        assert_eq!(check_soluble_base(&c5).status, Status::Pass);
        let c4 =
            Instance::new(circuit(4).unwrap(), PermGroup::cyclic(4), Limits::default()).unwrap();
        assert_eq!(check_soluble_base(&c4).status, Status::Pass);
        let c6 =
            Instance::new(circuit(6).unwrap(), PermGroup::cyclic(6), Limits::default()).unwrap();
        assert_eq!(check_soluble_base(&c6).status, Status::NotApplicable);
    }

    #[test]
    fn hadamard_examples() {
        let c3 = aut(circuit(3).unwrap());
        let r = check_hadamard_design(&c3);
        assert_eq!(r.status, Status::Pass);
        assert!(r.notes.iter().any(|n| n.contains("degenerate")));
        let p7 = paley_tournament(7).unwrap();
        assert_eq!(
            check_hadamard_design(&aut(p7.clone())).status,
            Status::NotApplicable
        );
        let d = design_parameters(&p7);
        assert_eq!((d.points, d.block_size, d.lambda), (7, Some(3), Some(1)));
        assert_eq!(d.hadamard_m(), Some(2));
        assert_eq!(
            check_hadamard_design(&aut(circuit(5).unwrap())).status,
            Status::NotApplicable
        );
    }

    #[test]
    fn run_check_dispatch() {
        let inst = aut(paley_tournament(7).unwrap());
        for id in CheckId::ALL {
            let r = run_check(id, &inst, None);
            assert_eq!(r.id, id);
            assert_ne!(r.status, Status::Fail, "{id}: {:?}", r.notes);
        }
    }
}
