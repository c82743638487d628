mod common;

use common::props::{self, Check};
use common::*;
use modcat::builtin::{cyclic, dihedral, direct};
use modcat::Group;

fn over_samples(check: impl Fn(&modcat::PointedCategory) -> Check) {
    for (name, cat) in sample_categories() {
        if let Err(e) = check(&cat) {
            panic!("{name}: {e}");
        }
    }
}

fn groups() -> Vec<Group> {
    vec![
        cyclic(5).unwrap(),
        dihedral(8).unwrap(),
        s3(),
        klein(),
        modcat::kac_paljutkin::kp_group().unwrap(),
    ]
}

#[test]
fn d_squared_vanishes() {
    props::d_squared(&groups(), 1).unwrap();
}

#[test]
fn omega_coboundary_relation() {
    over_samples(props::omega_coboundary);
}

#[test]
fn omega_product_relation() {
    over_samples(props::omega_product);
}

#[test]
fn theta_identity() {
    over_samples(props::theta_identity);
}

#[test]
fn xi_inverse_relation() {
    over_samples(props::xi_inverse);
}

#[test]
fn alpha_matches_criterion_cocycle() {
    over_samples(props::alpha_criterion);
}

#[test]
fn conjugate_pairs_are_equivalent() {
    over_samples(props::conjugate_pairs);
}

#[test]
fn solver_witnesses_round_trip() {
    props::witness_round_trips(&groups(), 2).unwrap();
}

#[test]
fn equivalence_relation_axioms() {
    over_samples(props::equivalence_axioms);
}

#[test]
fn cohomologous_omega_invariance() {
    for (k, (name, cat)) in sample_categories().into_iter().enumerate() {
        props::twist_invariance(&cat, 100 + k as u64).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn trivial_omega_reduces_to_conjugation() {
    let gs = [
        cyclic(6).unwrap(),
        klein(),
        s3(),
        dihedral(8).unwrap(),
        direct(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap(),
    ];
    for g in &gs {
        props::trivial_reduction(g).unwrap();
    }
}

#[test]
fn trivial_omega_matches_brute_force() {
    for g in [cyclic(2).unwrap(), cyclic(3).unwrap(), cyclic(4).unwrap(), klein()] {
        let brute = brute_trivial_classes(&g);
        let got = modcat::classify(&modcat::PointedCategory::trivial(&g))
            .unwrap()
            .class_count();
        assert_eq!(got, brute, "order {}", g.order());
    }
}
