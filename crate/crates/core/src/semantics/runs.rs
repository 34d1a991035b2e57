use std::collections::HashMap;

use super::{Mode, State, StateKind, StateSpace};
use crate::error::Error;
use crate::model::{Atom, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunStatus {
    /// The last state is final.
    Complete,
    /// Cut by the depth bound or, on an input stream, because the stream
    /// was exhausted.
    Truncated,
    /// The last state repeats the state at `loop_start`; stands for the
    /// infinite run that keeps going around the loop.
    Lasso { loop_start: usize },
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Complete => "complete",
            RunStatus::Truncated => "truncated",
            RunStatus::Lasso { .. } => "lasso",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Run {
    pub states: Vec<State>,
    pub status: RunStatus,
}

impl Run {
    pub fn is_complete(&self) -> bool {
        self.status == RunStatus::Complete
    }

    /// A lasso whose loop consists of internal states only: the finite form
    /// of a divergent run.
    pub fn is_divergent(&self) -> bool {
        match self.status {
            RunStatus::Lasso { loop_start } => self.states[loop_start..]
                .iter()
                .all(|s| s.kind() == StateKind::Internal),
            _ => false,
        }
    }
}

/// Output value of a complete run: the first defined output component.
pub fn extract_output(run: &Run) -> Result<Atom, Error> {
    if !run.is_complete() {
        return Err(Error::IncompleteRun);
    }
    run.states
        .iter()
        .find_map(|s| s.dout.clone())
        .ok_or(Error::IncompleteRun)
}

/// Input values consumed by a complete run, in order.
pub fn extract_inputs(run: &Run) -> Result<Vec<Atom>, Error> {
    if !run.is_complete() {
        return Err(Error::IncompleteRun);
    }
    let (_, body) = run.states.split_last().ok_or(Error::IncompleteRun)?;
    Ok(body.iter().filter_map(|s| s.din.clone()).collect())
}

/// Output values produced by a complete run, ending with the final output.
pub fn extract_outputs(run: &Run) -> Result<Vec<Atom>, Error> {
    if !run.is_complete() {
        return Err(Error::IncompleteRun);
    }
    Ok(run.states.iter().filter_map(|s| s.dout.clone()).collect())
}

/// Runs on one input (or input stream), split into the runs proper and the
/// exploration residue.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunSet {
    /// Complete runs, plus divergent lassos, whose consumed input equals the
    /// given input exactly.
    pub runs: Vec<Run>,
    /// Truncated runs, and runs that stopped or diverged after consuming
    /// only a proper prefix of the input stream.
    pub residue: Vec<Run>,
}

impl RunSet {
    pub fn complete(&self) -> impl Iterator<Item = &Run> {
        self.runs.iter().filter(|r| r.is_complete())
    }
}

struct Explorer<'a> {
    space: &'a StateSpace,
    mode: Mode,
    depth: usize,
    stream: Option<&'a [usize]>,
    path: Vec<usize>,
    on_path: HashMap<(usize, usize), usize>,
    found: Vec<(Vec<usize>, RunStatus, usize)>,
}

impl Explorer<'_> {
    fn visit(&mut self, s: usize, consumed: usize) {
        self.on_path.insert((s, consumed), self.path.len());
        self.path.push(s);
        self.expand(s, consumed);
        self.path.pop();
        self.on_path.remove(&(s, consumed));
    }

    fn expand(&mut self, s: usize, consumed: usize) {
        let space = self.space;
        if space.state_kind(s) == StateKind::Final {
            self.found.push((self.path.clone(), RunStatus::Complete, consumed));
            return;
        }
        if self.path.len() > self.depth {
            self.found.push((self.path.clone(), RunStatus::Truncated, consumed));
            return;
        }
        let mut starved = false;
        for &t in space.successors(s, self.mode) {
            let mut next = consumed;
            if let (Some(stream), StateKind::Interaction) = (self.stream, space.state_kind(t)) {
                if consumed == stream.len() {
                    starved = true;
                    continue;
                }
                if space.din_index(t) != Some(stream[consumed]) {
                    continue;
                }
                next += 1;
            }
            if let Some(&start) = self.on_path.get(&(t, next)) {
                let mut path = self.path.clone();
                path.push(t);
                self.found.push((path, RunStatus::Lasso { loop_start: start }, next));
            } else {
                self.visit(t, next);
            }
        }
        if starved {
            self.found.push((self.path.clone(), RunStatus::Truncated, consumed));
        }
    }
}

fn explore(
    space: &StateSpace,
    start: usize,
    mode: Mode,
    depth: usize,
    stream: Option<&[usize]>,
) -> Vec<(Vec<usize>, RunStatus, usize)> {
    let mut ex = Explorer {
        space,
        mode,
        depth,
        stream,
        path: Vec::new(),
        on_path: HashMap::new(),
        found: Vec::new(),
    };
    ex.visit(start, usize::from(stream.is_some()));
    ex.found
}

fn materialize(space: &StateSpace, path: &[usize], status: RunStatus) -> Run {
    Run { states: path.iter().map(|&i| space.state(i).clone()).collect(), status }
}

/// All semi-runs from `s` of at most `depth` steps. Final states end a run;
/// the first repeated non-final state along a branch closes a lasso.
pub fn semi_runs(space: &StateSpace, s: &State, mode: Mode, depth: usize) -> Result<Vec<Run>, Error> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let start = space.require(s)?;
    Ok(explore(space, start, mode, depth, None)
        .into_iter()
        .map(|(p, st, _)| materialize(space, &p, st))
        .collect())
}

/// Runs on an input value (non-interactive: exactly one atom) or an input
/// stream (interactive: a non-empty sequence).
pub fn run_set(space: &StateSpace, input: &[Atom], mode: Mode, depth: usize) -> Result<RunSet, Error> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    if input.is_empty() {
        return Err(Error::EmptyStream);
    }
    let stream = input
        .iter()
        .map(|a| {
            space.input_index(a).ok_or_else(|| Error::AtomOutsideDomain {
                atom: a.to_string(),
                domain: "input domain",
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut set = RunSet::default();
    match space.kind() {
        Kind::NonInteractive => {
            if stream.len() != 1 {
                return Err(Error::Precondition(
                    "a non-interactive run takes exactly one input value".into(),
                ));
            }
            let start = space.initial_states()[stream[0]];
            for (p, st, _) in explore(space, start, mode, depth, None) {
                let run = materialize(space, &p, st);
                match st {
                    RunStatus::Truncated => set.residue.push(run),
                    _ => set.runs.push(run),
                }
            }
        }
        Kind::Interactive => {
            let start = space.initial_states()[stream[0]];
            for (p, st, consumed) in explore(space, start, mode, depth, Some(&stream)) {
                let run = materialize(space, &p, st);
                let exact = consumed == stream.len();
                let keep = match st {
                    RunStatus::Complete => exact,
                    RunStatus::Lasso { .. } => exact && run.is_divergent(),
                    RunStatus::Truncated => false,
                };
                if keep {
                    set.runs.push(run);
                } else {
                    set.residue.push(run);
                }
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn space(pa: crate::model::ProtoAlgorithm) -> StateSpace {
        StateSpace::new(&pa).unwrap()
    }

    #[test]
    fn parity_single_path() {
        let sp = space(fixtures::parity());
        let runs = semi_runs(&sp, &State::initial(3), Mode::Algorithmic, 10).unwrap();
        assert_eq!(
            runs,
            vec![Run {
                states: vec![State::initial(3), State::internal("v_fin", 3), State::final_("odd")],
                status: RunStatus::Complete,
            }]
        );
        assert_eq!(extract_output(&runs[0]).unwrap(), Atom::str("odd"));
    }

    #[test]
    fn final_state_is_a_singleton_run() {
        let sp = space(fixtures::parity());
        let runs = semi_runs(&sp, &State::final_("even"), Mode::Algorithmic, 10).unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].states, vec![State::final_("even")]);
        assert!(runs[0].is_complete());
        assert_eq!(extract_output(&runs[0]).unwrap(), Atom::str("even"));
    }

    #[test]
    fn choice_branches() {
        let sp = space(fixtures::choice());
        let runs = semi_runs(&sp, &State::initial(2), Mode::Algorithmic, 10).unwrap();
        assert_eq!(runs.len(), 2);
        assert!(runs.iter().all(|r| r.is_complete() && r.states.len() == 4));
        let outs: Vec<Atom> = runs.iter().map(|r| extract_output(r).unwrap()).collect();
        assert_eq!(outs, vec![Atom::Int(3), Atom::Int(4)]);
    }

    #[test]
    fn depth_truncates() {
        let sp = space(fixtures::choice());
        let runs = semi_runs(&sp, &State::initial(2), Mode::Algorithmic, 1).unwrap();
        assert_eq!(runs.len(), 2);
        assert!(runs.iter().all(|r| r.status == RunStatus::Truncated && r.states.len() == 2));
        assert!(extract_output(&runs[0]).is_err());
        assert!(semi_runs(&sp, &State::initial(2), Mode::Algorithmic, 0).is_err());
    }

    #[test]
    fn loop_fixture_yields_divergent_lasso() {
        let sp = space(fixtures::parity_loop());
        let runs = semi_runs(&sp, &State::initial(1), Mode::Algorithmic, 10).unwrap();
        assert_eq!(runs.len(), 2);
        let lasso = runs.iter().find(|r| matches!(r.status, RunStatus::Lasso { .. })).unwrap();
        assert!(lasso.is_divergent());
        assert_eq!(lasso.states.last(), Some(&State::internal("v_f", 1)));
    }

    #[test]
    fn echo_streams() {
        let sp = space(fixtures::echo());
        let set = run_set(&sp, &crate::model::ints([1, 2, 0]), Mode::Algorithmic, 40).unwrap();
        assert_eq!(set.runs.len(), 1);
        let run = &set.runs[0];
        assert_eq!(run.states.len(), 10);
        assert_eq!(extract_inputs(run).unwrap(), crate::model::ints([1, 2, 0]));
        assert_eq!(extract_outputs(run).unwrap(), crate::model::ints([1, 2, 0]));

        let set = run_set(&sp, &crate::model::ints([0]), Mode::Algorithmic, 40).unwrap();
        assert_eq!(set.runs.len(), 1);
        assert_eq!(set.runs[0].states.len(), 4);
        assert_eq!(extract_inputs(&set.runs[0]).unwrap(), crate::model::ints([0]));
        assert_eq!(extract_outputs(&set.runs[0]).unwrap(), crate::model::ints([0]));
    }

    #[test]
    fn echo_stops_early_on_zero() {
        let sp = space(fixtures::echo());
        let set = run_set(&sp, &crate::model::ints([0, 1]), Mode::Algorithmic, 20).unwrap();
        assert_eq!(set.complete().count(), 0);
        assert_eq!(set.residue.len(), 1);
        assert!(set.residue[0].is_complete());
    }

    #[test]
    fn repeated_values_on_a_stream_are_not_lassos() {
        let sp = space(fixtures::echo());
        let set = run_set(&sp, &crate::model::ints([1, 1, 0]), Mode::Algorithmic, 40).unwrap();
        assert_eq!(set.runs.len(), 1);
        assert!(set.runs[0].is_complete());
    }

    #[test]
    fn stream_exhaustion_is_residue() {
        let sp = space(fixtures::echo());
        let set = run_set(&sp, &crate::model::ints([2]), Mode::Algorithmic, 40).unwrap();
        assert!(set.runs.is_empty());
        assert_eq!(set.residue.len(), 1);
        assert_eq!(set.residue[0].status, RunStatus::Truncated);
    }

    #[test]
    fn input_outside_domain() {
        let sp = space(fixtures::parity());
        let err = run_set(&sp, &[Atom::Int(7)], Mode::Algorithmic, 10).unwrap_err();
        assert!(matches!(err, Error::AtomOutsideDomain { .. }));
    }
}
