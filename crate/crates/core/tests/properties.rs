use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use protoalg::equivalence::{
    check_equivalence, check_equivalence_with, check_isomorphism, greatest_simulation, greatest_simulation_with,
    validate_equivalence_witness, validate_iso_witness, validate_simulation_witness,
};
use protoalg::format::{parse_definition, parse_witness, serialize_definition, serialize_witness, WitnessDocument};
use protoalg::model::{validate, Kind, ProtoAlgorithm};
use protoalg::random::{mutate, random_model, rename, rng, Shape};
use protoalg::semantics::{computed_relation, Mode, StateKind, StateSpace};
use protoalg::Exec;

fn kind(interactive: bool) -> Kind {
    if interactive {
        Kind::Interactive
    } else {
        Kind::NonInteractive
    }
}

fn model(seed: u64, interactive: bool) -> ProtoAlgorithm {
    random_model(&mut rng(seed), &Shape::small(kind(interactive)))
}

const MODES: [Mode; 2] = [Mode::Algorithmic, Mode::Computational];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_models_validate(seed: u64, interactive: bool) {
        let pa = model(seed, interactive);
        prop_assert!(validate(&pa).is_valid(), "{}", validate(&pa).summary());
    }

    #[test]
    fn definitions_round_trip(seed: u64, interactive: bool) {
        let pa = model(seed, interactive);
        let text = serialize_definition(&pa);
        let back = parse_definition(&text).unwrap();
        prop_assert_eq!(&back, &pa);
        prop_assert_eq!(serialize_definition(&back), text);
    }

    #[test]
    fn steps_are_total_and_finals_absorb(seed: u64, interactive: bool) {
        let s = StateSpace::new(&model(seed, interactive)).unwrap();
        for st in s.states() {
            for mode in MODES {
                let next = s.step(st, mode).unwrap();
                prop_assert!(!next.is_empty());
                if st.kind() == StateKind::Final {
                    prop_assert_eq!(next, vec![st.clone()]);
                }
            }
        }
    }

    #[test]
    fn renaming_is_an_isomorphism(seed: u64, interactive: bool) {
        let a = model(seed, interactive);
        let b = rename(&mut rng(seed ^ 1), &a);
        let w = check_isomorphism(&a, &b).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(validate_iso_witness(&a, &b, &w).is_empty());
        let doc = WitnessDocument::Isomorphism(w.clone());
        prop_assert_eq!(parse_witness(&serialize_witness(&doc)).unwrap(), doc);
        // Isomorphic models compute the same relation up to renaming.
        let din: BTreeMap<_, _> = w.input_domain.iter().cloned().collect();
        let dout: BTreeMap<_, _> = w.output_domain.iter().cloned().collect();
        let ra = computed_relation(&StateSpace::new(&a).unwrap(), 2).stream_pairs();
        let rb: BTreeSet<_> = computed_relation(&StateSpace::new(&b).unwrap(), 2).stream_pairs().into_iter().collect();
        let mapped: BTreeSet<_> = ra
            .iter()
            .map(|(i, o)| (i.iter().map(|x| din[x].clone()).collect::<Vec<_>>(), o.iter().map(|y| dout[y].clone()).collect::<Vec<_>>()))
            .collect();
        prop_assert_eq!(mapped, rb);
    }

    #[test]
    fn equivalence_is_symmetric(seed: u64, interactive: bool) {
        let mut r = rng(seed);
        let a = random_model(&mut r, &Shape::small(kind(interactive)));
        let (_, b) = mutate(&mut r, &a);
        let (sa, sb) = (StateSpace::new(&a).unwrap(), StateSpace::new(&b).unwrap());
        for mode in MODES {
            let ab = check_equivalence(&sa, &sb, mode).unwrap();
            let ba = check_equivalence(&sb, &sa, mode).unwrap();
            prop_assert_eq!(ab.is_some(), ba.is_some());
            if let Some(w) = ab {
                prop_assert!(validate_equivalence_witness(&sa, &sb, &w).is_empty());
            }
        }
    }

    #[test]
    fn engine_witnesses_validate(seed: u64, interactive: bool) {
        let mut r = rng(seed);
        let a = random_model(&mut r, &Shape::small(kind(interactive)));
        let (_, b) = mutate(&mut r, &a);
        let (sa, sb) = (StateSpace::new(&a).unwrap(), StateSpace::new(&b).unwrap());
        for mode in MODES {
            if let Some(w) = greatest_simulation(&sa, &sb, mode).unwrap() {
                prop_assert!(validate_simulation_witness(&sa, &sb, &w).is_empty());
            }
        }
    }

    #[test]
    fn execution_strategy_does_not_change_results(seed: u64, interactive: bool) {
        let mut r = rng(seed);
        let a = random_model(&mut r, &Shape::small(kind(interactive)));
        let (_, b) = mutate(&mut r, &a);
        let (sa, sb) = (StateSpace::new(&a).unwrap(), StateSpace::new(&b).unwrap());
        for mode in MODES {
            prop_assert_eq!(
                greatest_simulation_with(&sa, &sb, mode, Exec::Sequential).unwrap(),
                greatest_simulation_with(&sa, &sb, mode, Exec::Parallel).unwrap()
            );
            prop_assert_eq!(
                check_equivalence_with(&sa, &sb, mode, Exec::Sequential).unwrap(),
                check_equivalence_with(&sa, &sb, mode, Exec::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn every_model_simulates_itself(seed: u64, interactive: bool) {
        let s = StateSpace::new(&model(seed, interactive)).unwrap();
        for mode in MODES {
            let w = greatest_simulation(&s, &s, mode).unwrap().unwrap();
            prop_assert!(validate_simulation_witness(&s, &s, &w).is_empty());
            // The identity is a simulation, so the greatest one contains it
            // unless the search settled on other translation maps.
            let identity = w.phi_in.iter().chain(&w.phi_out).all(|(x, y)| x == y);
            if interactive && !identity {
                continue;
            }
            for st in s.states() {
                prop_assert!(w.pairs.contains(&(st.clone(), st.clone())), "{} missing", st);
            }
        }
    }
}
