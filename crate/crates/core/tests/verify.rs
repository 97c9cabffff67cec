use digeo::construct::{
    cayley_holomorph_action, circuit, paley_tournament, quotient_by_normal, translation_group,
    CayleySpec,
};
use digeo::verify::{
    check_hadamard_design, check_quotient_theorem, check_regular_normal, check_soluble_base,
    design_parameters, replay, run_check, CheckId, CheckResult, Instance, Status, Witness,
};
use digeo::{GroupTable, Limits, PermGroup, Permutation, SymmetryClass};

fn rotation(n: usize, k: usize) -> PermGroup {
    let images = (0..n).map(|i| (i + k) % n).collect();
    PermGroup::with_degree(n, vec![Permutation::from_images(images).unwrap()]).unwrap()
}

fn full(g: digeo::Digraph) -> Instance {
    Instance::with_automorphisms(g, Limits::default()).unwrap()
}

#[test]
fn c12_quotient_by_rot4() {
    let c12 = full(circuit(12).unwrap());
    let n = rotation(12, 4);
    let q = quotient_by_normal(c12.digraph(), c12.group(), &n).unwrap();
    assert_eq!(q.quotient, circuit(4).unwrap());
    assert_eq!(q.quotient.symmetry_class(), SymmetryClass::Directed);
    assert!(!q.internal_arcs);
    let r = check_quotient_theorem(&c12, Some(&n));
    assert_eq!(r.status, Status::Pass, "{r:?}");
}

#[test]
fn c6_quotients() {
    let c6 = full(circuit(6).unwrap());
    assert_eq!(
        check_quotient_theorem(&c6, Some(&rotation(6, 3))).status,
        Status::Pass
    );
    assert_eq!(
        check_quotient_theorem(&c6, Some(&rotation(6, 2))).status,
        Status::NotApplicable
    );
    assert_eq!(
        run_check(CheckId::L3_2, &c6, Some(&rotation(6, 2))).status,
        Status::Pass
    );
}

#[test]
fn regular_normal_on_circuit() {
    let spec = CayleySpec::new(GroupTable::cyclic(5).unwrap(), vec![1]).unwrap();
    let holo = cayley_holomorph_action(&spec, &Limits::default()).unwrap();
    let inst = Instance::new(circuit(5).unwrap(), holo, Limits::default()).unwrap();
    let r = check_regular_normal(&inst, Some(&translation_group(spec.table())));
    assert_eq!(r.status, Status::Pass);
    let stab = PermGroup::trivial(5);
    assert_eq!(
        check_regular_normal(&inst, Some(&stab)).status,
        Status::NotApplicable
    );
}

#[test]
fn soluble_base_cases() {
    let c5 = Instance::new(circuit(5).unwrap(), rotation(5, 1), Limits::default()).unwrap();
    assert_eq!(check_soluble_base(&c5).status, Status::Pass);
    let c4 = full(circuit(4).unwrap());
    assert_eq!(check_soluble_base(&c4).status, Status::Pass);
    let c6 = full(circuit(6).unwrap());
    assert_eq!(check_soluble_base(&c6).status, Status::NotApplicable);
}

#[test]
fn hadamard_examples() {
    let c3 = full(circuit(3).unwrap());
    let r = check_hadamard_design(&c3);
    assert_eq!(r.status, Status::Pass);
    assert!(r.notes.iter().any(|n| n.contains("m = 1")));

    let p7 = full(paley_tournament(7).unwrap());
    assert_eq!(check_hadamard_design(&p7).status, Status::NotApplicable);
    let d = design_parameters(p7.digraph());
    assert_eq!((d.points, d.block_size, d.lambda), (7, Some(3), Some(1)));
    assert_eq!(d.hadamard_m(), Some(2));

    let c5 = full(circuit(5).unwrap());
    assert_eq!(check_hadamard_design(&c5).status, Status::NotApplicable);
}

#[test]
fn every_check_runs_on_a_mixed_instance() {
    let spec = CayleySpec::new(GroupTable::abelian(&[3, 3]).unwrap(), vec![1, 3]).unwrap();
    let inst = full(digeo::construct::cayley_digraph(&spec));
    for id in CheckId::ALL {
        let r = run_check(id, &inst, None);
        assert_eq!(r.id, id);
        assert_ne!(r.status, Status::Fail, "{r:?}");
    }
}

#[test]
fn fabricated_failures_do_not_replay() {
    let p7 = full(paley_tournament(7).unwrap());
    let fake = CheckResult {
        id: CheckId::L4_1,
        status: Status::Fail,
        witness: Some(Witness::Arc { u: 0, v: 1 }),
        notes: Vec::new(),
    };
    assert!(!replay(&fake, &p7, None).unwrap());
    let fake = CheckResult {
        id: CheckId::T1_4ii,
        status: Status::Fail,
        witness: Some(Witness::Pair { x: 0, y: 1 }),
        notes: Vec::new(),
    };
    assert!(!replay(&fake, &p7, None).unwrap());
    let fake = CheckResult {
        id: CheckId::T1_2,
        status: Status::Fail,
        witness: Some(Witness::Subgroup {
            generators: vec!["(0,1,2,3,4,5,6)".into()],
        }),
        notes: Vec::new(),
    };
    assert!(!replay(&fake, &p7, None).unwrap());
}
