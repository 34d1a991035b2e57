use protoalg::equivalence::{
    check_equivalence, check_hierarchy, check_isomorphism, greatest_simulation, oracle_simulation_exists,
    validate_simulation_witness, verify_simulation_consequences,
};
use protoalg::fixtures;
use protoalg::model::{Atom, ProtoAlgorithm};
use protoalg::semantics::{run_set, Mode, State, StateSpace};
use protoalg::Error;

fn space(pa: &ProtoAlgorithm) -> StateSpace {
    StateSpace::new(pa).unwrap()
}

fn eqv(a: &ProtoAlgorithm, b: &ProtoAlgorithm, mode: Mode) -> bool {
    check_equivalence(&space(a), &space(b), mode).unwrap().is_some()
}

#[test]
fn parity_and_its_predicate_variant() {
    let (a, b) = (fixtures::parity(), fixtures::parity_pred());
    assert!(!eqv(&a, &b, Mode::Algorithmic));
    assert!(eqv(&a, &b, Mode::Computational));
    assert!(check_isomorphism(&a, &b).unwrap().is_none());
}

#[test]
fn renamed_parity() {
    let (a, b) = (fixtures::parity(), fixtures::parity_renamed());
    let w = check_isomorphism(&a, &b).unwrap().unwrap();
    assert!(w.domain.contains(&(Atom::Int(0), Atom::Int(3))));
    assert!(eqv(&a, &b, Mode::Algorithmic));
    let extra = fixtures::parity_renamed_extra_symbol();
    assert!(check_isomorphism(&a, &extra).unwrap().is_none());
    assert!(eqv(&a, &extra, Mode::Algorithmic));
}

#[test]
fn echo_is_not_simulated_by_a_constant() {
    let (a, b) = (fixtures::echo(), fixtures::echo_const0());
    for mode in [Mode::Algorithmic, Mode::Computational] {
        assert!(greatest_simulation(&space(&a), &space(&b), mode).unwrap().is_none());
    }
}

#[test]
fn kinds_must_match() {
    let r = greatest_simulation(&space(&fixtures::parity()), &space(&fixtures::echo()), Mode::Algorithmic);
    assert!(matches!(r, Err(Error::KindMismatch { .. })));
}

#[test]
fn tampered_witness_is_rejected() {
    let (sa, sb) = (space(&fixtures::parity()), space(&fixtures::parity_renamed()));
    let mut w = greatest_simulation(&sa, &sb, Mode::Algorithmic).unwrap().unwrap();
    assert!(validate_simulation_witness(&sa, &sb, &w).is_empty());
    w.pairs.retain(|(s, _)| *s != State::internal("v_fin", 1));
    assert!(!validate_simulation_witness(&sa, &sb, &w).is_empty());
    assert!(matches!(verify_simulation_consequences(&sa, &sb, &w, 3), Err(Error::InvalidWitness(_))));
}

#[test]
fn consequences_for_echo() {
    let s = space(&fixtures::echo());
    let w = greatest_simulation(&s, &s, Mode::Algorithmic).unwrap().unwrap();
    let r = verify_simulation_consequences(&s, &s, &w, 3).unwrap();
    assert!(r.holds(), "{:?}", r.failures);
    assert_eq!(r.inputs_checked, 39);
}

/// Pairs where a predicate vertex on one side lines up with a function
/// vertex on the other: the computational step folds the test into the next
/// step, so runs get shorter on one side only.
const ALGORITHMIC_ONLY: [(&str, &str); 3] = [("choice", "parity_pred"), ("parity_step", "parity_pred"), ("choice_swap", "parity_pred")];

fn algorithmic_only(a: &str, b: &str) -> bool {
    ALGORITHMIC_ONLY.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
}

#[test]
fn hierarchy_on_fixture_pairs() {
    for (na, a) in fixtures::all() {
        for (nb, b) in fixtures::all() {
            if a.kind() == b.kind() {
                let h = check_hierarchy(&a, &b).unwrap();
                if algorithmic_only(na, nb) {
                    assert!(eqv(&a, &b, Mode::Algorithmic) && !eqv(&a, &b, Mode::Computational), "({na}, {nb})");
                } else {
                    assert!(h.violations.is_empty(), "({na}, {nb}): {:?}", h.violations);
                }
            }
        }
    }
}

#[test]
fn algorithmic_witness_need_not_be_computational() {
    let (a, b) = (fixtures::parity_step(), fixtures::parity_pred());
    let (sa, sb) = (space(&a), space(&b));
    let w = check_equivalence(&sa, &sb, Mode::Algorithmic).unwrap().unwrap();
    let mut forward = w.forward.clone();
    assert!(validate_simulation_witness(&sa, &sb, &forward).is_empty());
    forward.mode = Mode::Computational;
    assert!(!validate_simulation_witness(&sa, &sb, &forward).is_empty());
    let len = |s: &StateSpace| run_set(s, &[Atom::Int(1)], Mode::Computational, 10).unwrap().runs[0].states.len();
    assert_eq!(len(&sa), len(&sb) + 1);
}

#[test]
fn greatest_simulation_cannot_be_extended() {
    let all = fixtures::all();
    for (na, a) in &all {
        for (nb, b) in &all {
            if a.kind() != b.kind() {
                continue;
            }
            let (sa, sb) = (space(a), space(b));
            for mode in [Mode::Algorithmic, Mode::Computational] {
                let Some(w) = greatest_simulation(&sa, &sb, mode).unwrap() else { continue };
                for s in sa.states() {
                    for t in sb.states() {
                        let pair = (s.clone(), t.clone());
                        if s.kind() != t.kind() || w.pairs.contains(&pair) {
                            continue;
                        }
                        let mut bigger = w.clone();
                        bigger.pairs.push(pair);
                        bigger.pairs.sort();
                        assert!(!validate_simulation_witness(&sa, &sb, &bigger).is_empty(), "({na}, {nb}) {s} {t}");
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_refuses_large_products() {
    let s = space(&fixtures::choice());
    assert!(matches!(oracle_simulation_exists(&s, &s, Mode::Algorithmic), Err(Error::OracleBound(_))));
}
