use protoalg::bridge::{
    classify_triviality, collapse_trivial, expand_to_interactive, is_expansion, verify_embedding, ExpansionSpec,
    Triviality,
};
use protoalg::fixtures;
use protoalg::model::{classify_determinism, validate, Kind};
use protoalg::random::{random_model, rng, Shape};
use protoalg::semantics::StateSpace;

#[test]
fn every_non_interactive_fixture_expands() {
    for (name, na) in fixtures::all().into_iter().filter(|(_, pa)| pa.kind() == Kind::NonInteractive) {
        let ia = expand_to_interactive(&na, &ExpansionSpec::projection(&na)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(classify_triviality(&ia).unwrap(), Triviality::Trivial);
        assert!(is_expansion(&na, &ia));
        assert_eq!(classify_determinism(&na), classify_determinism(&ia));
        assert_eq!(StateSpace::new(&na).unwrap().len(), StateSpace::new(&ia).unwrap().len());
        let r = verify_embedding(&na, &ia, 3).unwrap();
        assert!(r.holds(), "{name}: {:?}", r.failures);
        assert_eq!(collapse_trivial(&ia).unwrap(), na);
    }
}

#[test]
fn random_models_embed() {
    let mut r = rng(12);
    for _ in 0..100 {
        let na = random_model(&mut r, &Shape::small(Kind::NonInteractive));
        let ia = expand_to_interactive(&na, &ExpansionSpec::projection(&na)).unwrap();
        let report = verify_embedding(&na, &ia, 2).unwrap();
        assert!(report.holds(), "{:?}", report.failures);
    }
}

#[test]
fn trivial_interactive_models_collapse_to_valid_ones() {
    let mut r = rng(13);
    let mut seen = 0;
    for _ in 0..200 {
        let ia = random_model(&mut r, &Shape::small(Kind::Interactive));
        if classify_triviality(&ia).unwrap() == Triviality::Trivial {
            seen += 1;
            let r = validate(&collapse_trivial(&ia).unwrap());
            assert!(r.is_valid(), "{}", r.summary());
        }
    }
    assert!(seen > 0);
}
