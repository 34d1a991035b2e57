//! Checks of what a simulation guarantees: the simulating model computes
//! (through the translation maps) everything the simulated one does, with
//! convergent runs of equal length.

use std::collections::{BTreeSet, HashSet};

use crate::error::Error;
use crate::exec::{self, Exec};
use crate::model::{Atom, Kind, ProtoAlgorithm};
use crate::semantics::{reachable_outputs, stream_outputs, streams_up_to, Mode, StateKind, StateSpace};

use super::iso::check_isomorphism;
use super::simulation::check_equivalence_with;
use super::witness::{validate_simulation_witness, SimulationWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceReport {
    /// Every computed pair of A is matched by a computed pair of A'.
    pub relation_modeling: bool,
    /// Every convergent run of A is matched by one of A' of equal length.
    pub run_lengths: bool,
    pub phi_in: Vec<(Atom, Atom)>,
    pub phi_out: Vec<(Atom, Atom)>,
    /// Inputs (or input streams) examined.
    pub inputs_checked: usize,
    /// Lengths of the convergent runs of A seen, up to the point where the
    /// joint exploration repeats.
    pub lengths: BTreeSet<usize>,
    pub failures: Vec<String>,
}

impl ConsequenceReport {
    pub fn holds(&self) -> bool {
        self.relation_modeling && self.run_lengths
    }
}

type Config = (usize, usize, Vec<usize>);

/// One step of the layered exploration: configurations reachable in exactly
/// one more step, and the outputs of runs completing in this layer.
fn advance(space: &StateSpace, stream: &[usize], layer: &BTreeSet<Config>) -> (BTreeSet<Config>, BTreeSet<Vec<usize>>) {
    let mut next = BTreeSet::new();
    let mut done = BTreeSet::new();
    for (s, pos, outs) in layer {
        if space.state_kind(*s) == StateKind::Final {
            if *pos == stream.len() {
                let mut o = outs.clone();
                o.push(space.dout_index(*s).unwrap());
                done.insert(o);
            }
            continue;
        }
        for &t in space.successors(*s, Mode::Algorithmic) {
            if space.state_kind(t) == StateKind::Interaction {
                if *pos < stream.len() && space.din_index(t) == Some(stream[*pos]) {
                    let mut o = outs.clone();
                    o.push(space.dout_index(t).unwrap());
                    next.insert((t, pos + 1, o));
                }
            } else {
                next.insert((t, *pos, outs.clone()));
            }
        }
    }
    (next, done)
}

/// Outputs of the convergent runs of A and A' grouped by run length, for
/// each length at which A has one. The pair of layers determines everything
/// that follows, so the exploration stops once a pair repeats.
fn joint_lengths(a: &StateSpace, b: &StateSpace, sa: &[usize], sb: &[usize]) -> Vec<(usize, Outputs, Outputs)> {
    let start = |space: &StateSpace, s: &[usize]| BTreeSet::from([(space.initial_states()[s[0]], 1, Vec::new())]);
    let (mut la, mut lb) = (start(a, sa), start(b, sb));
    let mut seen = HashSet::new();
    let mut trace = Vec::new();
    for k in 0.. {
        if la.is_empty() || !seen.insert((la.clone(), lb.clone())) {
            break;
        }
        let (na, da) = advance(a, sa, &la);
        let (nb, db) = advance(b, sb, &lb);
        if !da.is_empty() {
            trace.push((k, da, db));
        }
        (la, lb) = (na, nb);
    }
    trace
}

type Outputs = BTreeSet<Vec<usize>>;

/// An input together with the run lengths that went unmatched.
type LengthFailure = (usize, Vec<usize>);

/// What one input (stream) of A and one candidate image in A' produce.
struct Observed {
    outs_a: Outputs,
    outs_b: Outputs,
    lengths: Vec<(usize, Outputs, Outputs)>,
}

impl Observed {
    fn new(a: &StateSpace, b: &StateSpace, sa: &[usize], sb: &[usize]) -> Self {
        let (outs_a, outs_b) = match a.kind() {
            Kind::NonInteractive => (
                reachable_outputs(a, sa[0], Mode::Algorithmic).into_iter().map(|o| vec![o]).collect(),
                reachable_outputs(b, sb[0], Mode::Algorithmic).into_iter().map(|o| vec![o]).collect(),
            ),
            Kind::Interactive => (stream_outputs(a, sa, Mode::Algorithmic), stream_outputs(b, sb, Mode::Algorithmic)),
        };
        Observed { outs_a, outs_b, lengths: joint_lengths(a, b, sa, sb) }
    }

    /// First failure of each conclusion under `phi_out`.
    fn failures(&self, phi_out: &[usize]) -> (Option<Vec<usize>>, Option<LengthFailure>) {
        let map = |set: &Outputs| -> Outputs { set.iter().map(|o| o.iter().map(|&y| phi_out[y]).collect()).collect() };
        let mapped = map(&self.outs_b);
        let modeling = self.outs_a.iter().find(|o| !mapped.contains(*o)).cloned();
        let lengths = self.lengths.iter().find_map(|(k, da, db)| {
            let mb = map(db);
            da.iter().find(|o| !mb.contains(*o)).map(|o| (*k, o.clone()))
        });
        (modeling, lengths)
    }
}

/// All assignments picking one option per slot, in canonical order.
fn choices(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|c| {
                opts.iter().map(move |&o| {
                    let mut c = c.clone();
                    c.push(o);
                    c
                })
            })
            .collect();
    }
    out
}

/// Verify the consequences of an algorithmic simulation `w` of A by A'.
/// `max_stream_len` bounds the input streams tried for interactive models.
///
/// For non-interactive models the translations are built from the
/// simulation: each input goes to an input whose initial state it is related
/// to, each output of A' to an output whose final state is related to it.
/// When several choices exist they are tried in canonical order and the
/// first satisfying both conclusions is reported.
pub fn verify_simulation_consequences(
    a: &StateSpace,
    b: &StateSpace,
    w: &SimulationWitness,
    max_stream_len: usize,
) -> Result<ConsequenceReport, Error> {
    if w.mode != Mode::Algorithmic {
        return Err(Error::Precondition("run-length consequences need an algorithmic simulation".into()));
    }
    let errors = validate_simulation_witness(a, b, w);
    if !errors.is_empty() {
        return Err(Error::InvalidWitness(errors.join("; ")));
    }
    let (din_a, din_b) = (a.input_domain(), b.input_domain());
    let (dout_a, dout_b) = (a.output_domain(), b.output_domain());
    let pos = |dom: &[Atom], x: &Atom| dom.iter().position(|y| y == x).unwrap();

    // Candidate images per input of A and per output of A'.
    let (in_options, out_options): (Vec<Vec<usize>>, Vec<Vec<usize>>) = match a.kind() {
        Kind::Interactive => {
            let fin = w.phi_in_map();
            let fout = w.phi_out_map();
            (
                din_a.iter().map(|x| vec![pos(din_b, &fin[x])]).collect(),
                dout_b.iter().map(|y| vec![pos(dout_a, &fout[y])]).collect(),
            )
        }
        Kind::NonInteractive => {
            let rel: BTreeSet<(usize, usize)> =
                w.pairs.iter().map(|(s, t)| (a.index_of(s).unwrap(), b.index_of(t).unwrap())).collect();
            (
                a.initial_states()
                    .iter()
                    .map(|&i| b.initial_states().iter().filter(|&&j| rel.contains(&(i, j))).map(|&j| b.din_index(j).unwrap()).collect())
                    .collect(),
                b.final_states()
                    .iter()
                    .map(|&j| a.final_states().iter().filter(|&&i| rel.contains(&(i, j))).map(|&i| a.dout_index(i).unwrap()).collect())
                    .collect(),
            )
        }
    };

    let streams: Vec<Vec<usize>> = match a.kind() {
        Kind::NonInteractive => (0..din_a.len()).map(|x| vec![x]).collect(),
        Kind::Interactive => streams_up_to(din_a.len(), max_stream_len),
    };
    // Non-interactive streams are single inputs, so each candidate image is
    // observed independently; interactive translations are fixed.
    let observed: Vec<Vec<Observed>> = exec::map(Exec::default(), &streams, |sa| match a.kind() {
        Kind::NonInteractive => in_options[sa[0]].iter().map(|&y| Observed::new(a, b, sa, &[y])).collect(),
        Kind::Interactive => {
            let sb: Vec<usize> = sa.iter().map(|&x| in_options[x][0]).collect();
            vec![Observed::new(a, b, sa, &sb)]
        }
    });

    let passes = |obs: &Observed, phi_out: &[usize]| obs.failures(phi_out) == (None, None);
    let found = choices(&out_options).into_iter().find_map(|phi_out| {
        let picks: Option<Vec<usize>> = observed
            .iter()
            .map(|per_image| per_image.iter().position(|obs| passes(obs, &phi_out)))
            .collect();
        picks.map(|p| (phi_out, p))
    });
    let (phi_out, picks, holds) = match found {
        Some((phi_out, picks)) => (phi_out, picks, true),
        None => (out_options.iter().map(|o| o[0]).collect(), vec![0; observed.len()], false),
    };
    let phi_in: Vec<usize> = match a.kind() {
        Kind::NonInteractive => picks.iter().enumerate().map(|(x, &p)| in_options[x][p]).collect(),
        Kind::Interactive => in_options.iter().map(|o| o[0]).collect(),
    };

    let mut report = ConsequenceReport {
        relation_modeling: true,
        run_lengths: true,
        phi_in: phi_in.iter().enumerate().map(|(x, &y)| (din_a[x].clone(), din_b[y].clone())).collect(),
        phi_out: phi_out.iter().enumerate().map(|(y, &x)| (dout_b[y].clone(), dout_a[x].clone())).collect(),
        inputs_checked: streams.len(),
        lengths: BTreeSet::new(),
        failures: Vec::new(),
    };
    let show = |v: &[usize], d: &[Atom]| v.iter().map(|&k| d[k].to_string()).collect::<Vec<_>>().join(",");
    for ((sa, per_image), &p) in streams.iter().zip(&observed).zip(&picks) {
        let obs = &per_image[p];
        report.lengths.extend(obs.lengths.iter().map(|(k, _, _)| *k));
        if holds {
            continue;
        }
        let (modeling, lengths) = obs.failures(&phi_out);
        if let Some(o) = modeling {
            report.relation_modeling = false;
            report.failures.push(format!("pair ({}) -> ({}) is not modeled", show(sa, din_a), show(&o, dout_a)));
        }
        if let Some((k, o)) = lengths {
            report.run_lengths = false;
            report.failures.push(format!(
                "run of length {k} on ({}) with outputs ({}) has no counterpart",
                show(sa, din_a),
                show(&o, dout_a)
            ));
        }
    }
    if !holds && report.failures.is_empty() {
        // Each input is fine on its own, but no single output translation
        // serves all of them.
        report.relation_modeling = false;
        report.failures.push("no output translation backed by the simulation serves every input".into());
    }
    Ok(report)
}

/// Isomorphism, algorithmic and computational equivalence of one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyReport {
    pub isomorphic: bool,
    pub algorithmically_equivalent: bool,
    pub computationally_equivalent: bool,
    /// Implications that failed to hold; empty for a consistent result.
    pub violations: Vec<String>,
}

pub fn check_hierarchy(a: &ProtoAlgorithm, b: &ProtoAlgorithm) -> Result<HierarchyReport, Error> {
    check_hierarchy_with(a, b, Exec::default())
}

pub fn check_hierarchy_with(a: &ProtoAlgorithm, b: &ProtoAlgorithm, exec: Exec) -> Result<HierarchyReport, Error> {
    let isomorphic = check_isomorphism(a, b)?.is_some();
    let (sa, sb) = (StateSpace::new(a)?, StateSpace::new(b)?);
    let algorithmically_equivalent = check_equivalence_with(&sa, &sb, Mode::Algorithmic, exec)?.is_some();
    let computationally_equivalent = check_equivalence_with(&sa, &sb, Mode::Computational, exec)?.is_some();
    let mut violations = Vec::new();
    if isomorphic && !algorithmically_equivalent {
        violations.push("isomorphic but not algorithmically equivalent".to_string());
    }
    if algorithmically_equivalent && !computationally_equivalent {
        violations.push("algorithmically but not computationally equivalent".to_string());
    }
    Ok(HierarchyReport { isomorphic, algorithmically_equivalent, computationally_equivalent, violations })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::equivalence::greatest_simulation;
    use crate::fixtures;

    #[test]
    fn parity_renamed_consequences() {
        let a = StateSpace::new(&fixtures::parity()).unwrap();
        let b = StateSpace::new(&fixtures::parity_renamed()).unwrap();
        let w = greatest_simulation(&a, &b, Mode::Algorithmic).unwrap().unwrap();
        let r = verify_simulation_consequences(&a, &b, &w, 1).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
        assert_eq!(r.lengths, BTreeSet::from([2]));
        let phi: BTreeMap<Atom, Atom> = r.phi_in.into_iter().collect();
        assert_eq!(phi[&Atom::Int(0)], Atom::Int(0));
        let phi: BTreeMap<Atom, Atom> = r.phi_out.into_iter().collect();
        assert_eq!(phi[&Atom::str("odd")], Atom::str("odd"));
    }

    #[test]
    fn echo_consequences() {
        let a = StateSpace::new(&fixtures::echo()).unwrap();
        let w = greatest_simulation(&a, &a, Mode::Algorithmic).unwrap().unwrap();
        let r = verify_simulation_consequences(&a, &a, &w, 3).unwrap();
        assert!(r.holds());
        assert_eq!(r.inputs_checked, 3 + 9 + 27);
    }

    #[test]
    fn collapsed_outputs_admit_no_translation() {
        let a = StateSpace::new(&fixtures::parity()).unwrap();
        let b = StateSpace::new(&fixtures::parity_collapsed()).unwrap();
        let w = greatest_simulation(&a, &b, Mode::Algorithmic).unwrap().unwrap();
        let r = verify_simulation_consequences(&a, &b, &w, 1).unwrap();
        assert!(!r.relation_modeling && !r.run_lengths);
    }

    #[test]
    fn computational_witness_is_rejected() {
        let a = StateSpace::new(&fixtures::parity()).unwrap();
        let w = greatest_simulation(&a, &a, Mode::Computational).unwrap().unwrap();
        assert!(matches!(verify_simulation_consequences(&a, &a, &w, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn hierarchy_of_renamed_parity() {
        let r = check_hierarchy(&fixtures::parity(), &fixtures::parity_renamed()).unwrap();
        assert!(r.isomorphic && r.algorithmically_equivalent && r.computationally_equivalent);
        assert!(r.violations.is_empty());
    }
}
