//! Basic degrees: they square to the unit and do not depend on the
//! finitization order.

use equideg::degree::{DegreeEngine, IsotypicalRep};
use proptest::prelude::*;

fn representations() -> Vec<IsotypicalRep> {
    let mut reps = Vec::new();
    for j in 1..=4 {
        reps.push(IsotypicalRep::component(j, 1).unwrap());
        reps.push(IsotypicalRep::component(j, 2).unwrap());
        for l in 1..=3 {
            reps.push(IsotypicalRep::mode(j, l).unwrap());
        }
    }
    reps
}

#[test]
fn basic_degrees_are_involutions() {
    let engine = DegreeEngine::new();
    for rep in representations() {
        let degree = engine.basic_degree(rep).unwrap();
        assert!(!degree.is_zero(), "{rep}");
        assert_eq!(engine.ring().mul(&degree, &degree).unwrap(), engine.ring().unit(), "{rep}");
    }
}

#[test]
fn trivial_component_has_the_negative_unit() {
    let engine = DegreeEngine::new();
    let degree = engine.basic_degree(IsotypicalRep::component(1, 1).unwrap()).unwrap();
    assert_eq!(degree, engine.ring().unit().scale(-1));
}

#[test]
fn invalid_orders_are_rejected() {
    let engine = DegreeEngine::new();
    let rep = IsotypicalRep::mode(2, 1).unwrap();
    assert!(!rep.valid_order(12));
    assert!(engine.basic_degree_at(rep, 12).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_is_independent_of_finitization(j in 1usize..=4, l in 1u32..=2) {
        let engine = DegreeEngine::new();
        let rep = IsotypicalRep::mode(j, l).unwrap();
        let m = rep.default_order();
        prop_assert_eq!(engine.basic_degree_at(rep, m).unwrap(), engine.basic_degree_at(rep, 2 * m).unwrap());
    }
}
