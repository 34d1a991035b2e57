//! Witness types and their validators.
//!
//! The validators check each definition clause by clause against the state
//! spaces. They share nothing with the search code in `simulation` and
//! `iso` beyond the step functions themselves.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::model::{Atom, Kind, ProtoAlgorithm, VertexId, FIN, IN, INIT, OUT};
use crate::semantics::{Mode, State, StateKind, StateSpace};

/// Bijections between two isomorphic proto-algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub functions: Vec<(String, String)>,
    pub predicates: Vec<(String, String)>,
    pub vertices: Vec<(VertexId, VertexId)>,
    pub domain: Vec<(Atom, Atom)>,
    pub input_domain: Vec<(Atom, Atom)>,
    pub output_domain: Vec<(Atom, Atom)>,
    /// Images of `0` and `1`.
    pub booleans: [u8; 2],
}

/// A simulation of one proto-algorithm by another.
///
/// `phi_in` maps the simulated model's inputs to the simulating model's,
/// `phi_out` maps the simulating model's outputs back. For interactive
/// models they are the translation maps the definition asks for; for
/// non-interactive models they are read off the paired initial and final
/// states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationWitness {
    pub mode: Mode,
    pub pairs: Vec<(State, State)>,
    pub phi_in: Vec<(Atom, Atom)>,
    pub phi_out: Vec<(Atom, Atom)>,
}

impl SimulationWitness {
    pub fn phi_in_map(&self) -> BTreeMap<Atom, Atom> {
        self.phi_in.iter().cloned().collect()
    }

    pub fn phi_out_map(&self) -> BTreeMap<Atom, Atom> {
        self.phi_out.iter().cloned().collect()
    }
}

/// `forward` simulates A by A'; `backward` simulates A' by A and pairs
/// exactly the inverse states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub forward: SimulationWitness,
    pub backward: SimulationWitness,
}

fn bijection<T: Eq + std::hash::Hash + Clone + std::fmt::Debug>(
    pairs: &[(T, T)],
    from: &[T],
    to: &[T],
    what: &str,
    errors: &mut Vec<String>,
) -> HashMap<T, T> {
    let map: HashMap<T, T> = pairs.iter().cloned().collect();
    let image: HashSet<&T> = pairs.iter().map(|(_, b)| b).collect();
    let sources: HashSet<&T> = from.iter().collect();
    let targets: HashSet<&T> = to.iter().collect();
    if map.len() != pairs.len()
        || image.len() != pairs.len()
        || sources.len() != pairs.len()
        || targets.len() != pairs.len()
        || pairs.iter().any(|(a, b)| !sources.contains(a) || !targets.contains(b))
    {
        errors.push(format!("{what} map is not a bijection"));
    }
    map
}

/// Check every isomorphism condition for `w`; returns the failed conditions.
pub fn validate_iso_witness(a: &ProtoAlgorithm, b: &ProtoAlgorithm, w: &IsoWitness) -> Vec<String> {
    let mut errors = Vec::new();
    if a.kind() != b.kind() {
        errors.push("kinds differ".into());
        return errors;
    }
    let bf = bijection(&w.functions, &a.alphabet.functions, &b.alphabet.functions, "function", &mut errors);
    let bp = bijection(&w.predicates, &a.alphabet.predicates, &b.alphabet.predicates, "predicate", &mut errors);
    let a_ids: Vec<VertexId> = a.graph.vertices.iter().map(|v| v.id.clone()).collect();
    let b_ids: Vec<VertexId> = b.graph.vertices.iter().map(|v| v.id.clone()).collect();
    let bv = bijection(&w.vertices, &a_ids, &b_ids, "vertex", &mut errors);
    let ia = &a.interpretation;
    let ib = &b.interpretation;
    let bd = bijection(&w.domain, &ia.domain, &ib.domain, "algorithm-domain", &mut errors);
    let bi = bijection(&w.input_domain, &ia.input_domain, &ib.input_domain, "input-domain", &mut errors);
    let bo = bijection(&w.output_domain, &ia.output_domain, &ib.output_domain, "output-domain", &mut errors);
    if !matches!(w.booleans, [0, 1] | [1, 0]) {
        errors.push("boolean map is not a bijection on {0,1}".into());
    }
    if !errors.is_empty() {
        return errors;
    }
    let bb = |x: u8| w.booleans[x as usize];

    let edges_a: HashMap<(&str, &str), Option<u8>> =
        a.graph.proper_edges().map(|e| ((e.from.as_str(), e.to.as_str()), e.label)).collect();
    let edges_b: HashMap<(&str, &str), Option<u8>> =
        b.graph.proper_edges().map(|e| ((e.from.as_str(), e.to.as_str()), e.label)).collect();
    for u in &a_ids {
        for v in &a_ids {
            let ea = edges_a.get(&(u.as_str(), v.as_str()));
            let eb = edges_b.get(&(bv[u].as_str(), bv[v].as_str()));
            if ea.is_some() != eb.is_some() {
                errors.push(format!("edge ({u},{v}) is not preserved"));
            }
            if let (Some(Some(la)), Some(lb)) = (ea, eb) {
                if Some(bb(*la)) != *lb {
                    errors.push(format!("edge label on ({u},{v}) is not preserved"));
                }
            }
        }
    }
    for v in &a.graph.vertices {
        let image = b.graph.label(&bv[&v.id]).unwrap_or_default();
        let mapped = if a.alphabet.is_function(&v.label) {
            bf.get(&v.label)
        } else {
            bp.get(&v.label)
        };
        if mapped.map(String::as_str) != Some(image) {
            errors.push(format!("label of vertex {} is not preserved", v.id));
        }
    }
    for r in crate::model::Alphabet::reserved(a.kind()) {
        if bf.get(*r).map(String::as_str) != Some(*r) {
            errors.push(format!("reserved symbol `{r}` is not fixed"));
        }
    }

    let eq = |x: Option<&Atom>, y: Option<&Atom>| x.is_some() && x == y;
    for din in &ia.input_domain {
        let lhs = ia.apply(INIT, din).map(|d| &bd[d]);
        if !eq(lhs, ib.apply(INIT, &bi[din])) {
            errors.push(format!("init does not commute at {din}"));
        }
    }
    for d in &ia.domain {
        let lhs = ia.apply(FIN, d).map(|o| &bo[o]);
        if !eq(lhs, ib.apply(FIN, &bd[d])) {
            errors.push(format!("fin does not commute at {d}"));
        }
        for f in a.alphabet.operations() {
            let lhs = ia.apply(f, d).map(|e| &bd[e]);
            if !eq(lhs, ib.apply(&bf[f], &bd[d])) {
                errors.push(format!("{f} does not commute at {d}"));
            }
        }
        for p in &a.alphabet.predicates {
            let lhs = ia.test(p, d).map(bb);
            if lhs.is_none() || lhs != ib.test(&bp[p], &bd[d]) {
                errors.push(format!("{p} does not commute at {d}"));
            }
        }
        if a.kind() == Kind::Interactive {
            let lhs = ia.apply(OUT, d).map(|o| &bo[o]);
            if !eq(lhs, ib.apply(OUT, &bd[d])) {
                errors.push(format!("out does not commute at {d}"));
            }
            for din in &ia.input_domain {
                let lhs = ia.apply_input(d, din).map(|e| &bd[e]);
                if !eq(lhs, ib.apply_input(&bd[d], &bi[din])) {
                    errors.push(format!("{IN} does not commute at ({d}, {din})"));
                }
            }
        }
    }
    errors
}

fn index_pairs(
    a: &StateSpace,
    b: &StateSpace,
    pairs: &[(State, State)],
    errors: &mut Vec<String>,
) -> HashSet<(usize, usize)> {
    let mut set = HashSet::new();
    for (s, t) in pairs {
        match (a.index_of(s), b.index_of(t)) {
            (Some(i), Some(j)) => {
                set.insert((i, j));
            }
            _ => errors.push(format!("pair ({s}, {t}) mentions an unknown state")),
        }
    }
    set
}

/// Check every clause of the simulation definition for `w` (simulating A by
/// A'); returns the failed clauses.
pub fn validate_simulation_witness(a: &StateSpace, b: &StateSpace, w: &SimulationWitness) -> Vec<String> {
    let mut errors = Vec::new();
    if a.kind() != b.kind() {
        errors.push("kinds differ".into());
        return errors;
    }
    let rel = index_pairs(a, b, &w.pairs, &mut errors);

    for &i in a.initial_states() {
        if !b.initial_states().iter().any(|&j| rel.contains(&(i, j))) {
            errors.push(format!("initial state {} is not related", a.state(i)));
        }
    }
    for &j in b.final_states() {
        if !a.final_states().iter().any(|&i| rel.contains(&(i, j))) {
            errors.push(format!("final state {} of the simulating model is not related", b.state(j)));
        }
    }
    let mut sorted: Vec<_> = rel.iter().copied().collect();
    sorted.sort_unstable();
    for &(i, j) in &sorted {
        for &t in a.successors(i, w.mode) {
            if !b.successors(j, w.mode).iter().any(|&u| rel.contains(&(t, u))) {
                errors.push(format!(
                    "step {} -> {} is not matched from {}",
                    a.state(i),
                    a.state(t),
                    b.state(j)
                ));
            }
        }
        let (ka, kb) = (a.state_kind(i), b.state_kind(j));
        let same = |k: StateKind| (ka == k) == (kb == k);
        let kinds_ok = same(StateKind::Initial)
            && same(StateKind::Final)
            && (a.kind() == Kind::NonInteractive || same(StateKind::Internal));
        if !kinds_ok {
            errors.push(format!("pair ({}, {}) relates states of different kinds", a.state(i), b.state(j)));
        }
    }

    let phi_in = w.phi_in_map();
    let phi_out = w.phi_out_map();
    match a.kind() {
        Kind::Interactive => {
            let total_in = a.input_domain().iter().all(|x| {
                phi_in.get(x).is_some_and(|y| b.input_domain().contains(y))
            });
            let total_out = b.output_domain().iter().all(|x| {
                phi_out.get(x).is_some_and(|y| a.output_domain().contains(y))
            });
            if !total_in || !total_out {
                errors.push("translation maps are not total".into());
            }
            for &(i, j) in &sorted {
                let (s, t) = (a.state(i), b.state(j));
                if (s.din.is_some() || t.din.is_some())
                    && (s.din.as_ref().and_then(|x| phi_in.get(x)) != t.din.as_ref())
                {
                    errors.push(format!("pair ({s}, {t}) disagrees with phi_in"));
                }
                if (s.dout.is_some() || t.dout.is_some())
                    && (t.dout.as_ref().and_then(|x| phi_out.get(x)) != s.dout.as_ref())
                {
                    errors.push(format!("pair ({s}, {t}) disagrees with phi_out"));
                }
            }
        }
        Kind::NonInteractive => {
            // Reported maps must be read off related initial/final states.
            for (x, y) in &w.phi_in {
                if !rel.contains(&(a.require(&State::initial(x.clone())).unwrap_or(usize::MAX),
                    b.require(&State::initial(y.clone())).unwrap_or(usize::MAX)))
                {
                    errors.push(format!("phi_in({x}) = {y} is not backed by related initial states"));
                }
            }
            for (y, x) in &w.phi_out {
                if !rel.contains(&(a.require(&State::final_(x.clone())).unwrap_or(usize::MAX),
                    b.require(&State::final_(y.clone())).unwrap_or(usize::MAX)))
                {
                    errors.push(format!("phi_out({y}) = {x} is not backed by related final states"));
                }
            }
        }
    }
    errors
}

/// Check both directions of an equivalence witness and that the backward
/// relation is exactly the inverse of the forward one.
pub fn validate_equivalence_witness(a: &StateSpace, b: &StateSpace, w: &EquivalenceWitness) -> Vec<String> {
    let mut errors = Vec::new();
    if w.forward.mode != w.backward.mode {
        errors.push("forward and backward witnesses use different modes".into());
    }
    errors.extend(validate_simulation_witness(a, b, &w.forward).into_iter().map(|e| format!("forward: {e}")));
    errors.extend(validate_simulation_witness(b, a, &w.backward).into_iter().map(|e| format!("backward: {e}")));
    let fwd: HashSet<(&State, &State)> = w.forward.pairs.iter().map(|(s, t)| (s, t)).collect();
    let bwd: HashSet<(&State, &State)> = w.backward.pairs.iter().map(|(t, s)| (s, t)).collect();
    if fwd != bwd {
        errors.push("backward relation is not the inverse of the forward relation".into());
    }
    errors
}
