use protoalg::fixtures;
use protoalg::model::Atom;
use protoalg::semantics::{
    computed_relation, divergence_reachable, extract_inputs, extract_output, extract_outputs, run_set, semi_runs,
    ComputedRelation, Mode, RunStatus, State, StateSpace,
};
use protoalg::Error;

fn space(pa: &protoalg::model::ProtoAlgorithm) -> StateSpace {
    StateSpace::new(pa).unwrap()
}

#[test]
fn parity_run_on_three() {
    let s = space(&fixtures::parity());
    let rs = run_set(&s, &[Atom::Int(3)], Mode::Algorithmic, 10).unwrap();
    assert_eq!(rs.runs.len(), 1);
    let run = &rs.runs[0];
    assert_eq!(run.states, vec![State::initial(3), State::internal("v_fin", 3), State::final_("odd")]);
    assert_eq!(extract_output(run).unwrap(), Atom::str("odd"));
}

#[test]
fn choice_has_two_runs() {
    let s = space(&fixtures::choice());
    let rs = run_set(&s, &[Atom::Int(2)], Mode::Algorithmic, 10).unwrap();
    let outs: Vec<Atom> = rs.complete().map(|r| extract_output(r).unwrap()).collect();
    assert_eq!(outs.len(), 2);
    assert!(outs.contains(&Atom::Int(3)) && outs.contains(&Atom::Int(4)));
}

#[test]
fn echo_stream_run() {
    let s = space(&fixtures::echo());
    let rs = run_set(&s, &[Atom::Int(1), Atom::Int(0)], Mode::Algorithmic, 20).unwrap();
    assert_eq!(rs.runs.len(), 1);
    let run = &rs.runs[0];
    assert!(run.is_complete());
    assert_eq!(extract_inputs(run).unwrap(), vec![Atom::Int(1), Atom::Int(0)]);
    assert_eq!(extract_outputs(run).unwrap(), vec![Atom::Int(1), Atom::Int(0)]);
}

#[test]
fn computational_runs_skip_tests() {
    let s = space(&fixtures::parity_pred());
    let a = run_set(&s, &[Atom::Int(1)], Mode::Algorithmic, 10).unwrap();
    let c = run_set(&s, &[Atom::Int(1)], Mode::Computational, 10).unwrap();
    assert_eq!(a.runs[0].states.len(), c.runs[0].states.len() + 1);
    assert_eq!(extract_output(&a.runs[0]).unwrap(), extract_output(&c.runs[0]).unwrap());
}

#[test]
fn looping_vertex_diverges() {
    let s = space(&fixtures::parity_loop());
    assert!(divergence_reachable(&s, &State::initial(0)).unwrap());
    assert!(!divergence_reachable(&space(&fixtures::parity()), &State::initial(0)).unwrap());
    let rs = run_set(&s, &[Atom::Int(0)], Mode::Algorithmic, 10).unwrap();
    assert!(rs.runs.iter().any(|r| r.is_divergent()));
    assert!(rs.runs.iter().any(|r| r.is_complete()));
    // Divergence does not remove the convergent pair.
    assert_eq!(computed_relation(&s, 1), computed_relation(&space(&fixtures::parity()), 1));
}

#[test]
fn depth_bound_truncates() {
    let s = space(&fixtures::choice());
    let runs = semi_runs(&s, &State::initial(0), Mode::Algorithmic, 1).unwrap();
    assert!(runs.iter().all(|r| r.status == RunStatus::Truncated));
    assert!(matches!(semi_runs(&s, &State::initial(0), Mode::Algorithmic, 0), Err(Error::ZeroDepth)));
}

#[test]
fn input_errors() {
    let s = space(&fixtures::parity());
    assert!(matches!(run_set(&s, &[Atom::Int(7)], Mode::Algorithmic, 5), Err(Error::AtomOutsideDomain { .. })));
    assert!(matches!(run_set(&s, &[], Mode::Algorithmic, 5), Err(Error::EmptyStream)));
    assert!(matches!(run_set(&s, &[Atom::Int(0), Atom::Int(1)], Mode::Algorithmic, 5), Err(Error::Precondition(_))));
    assert!(s.astep(&State::internal("nowhere", 0)).is_err());
}

#[test]
fn echo_relation_grows_with_the_bound() {
    let s = space(&fixtures::echo());
    let sizes: Vec<usize> = (1..=3).map(|n| computed_relation(&s, n).len()).collect();
    assert_eq!(sizes, vec![1, 3, 7]);
    let ComputedRelation::Streams(pairs) = computed_relation(&s, 3) else { panic!() };
    assert!(pairs.iter().all(|(i, o)| i == o && i.last() == Some(&Atom::Int(0))));
}

#[test]
fn choice_seq_and_choice_relations() {
    let rel = |pa| computed_relation(&space(&pa), 1);
    assert!(!rel(fixtures::choice()).is_functional());
    assert!(rel(fixtures::parity()).is_functional());
    assert_eq!(rel(fixtures::choice()), rel(fixtures::choice_swap()));
}
