use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{Mode, State, StateKind, StateSpace};
use crate::error::Error;
use crate::exec::{self, Exec};
use crate::model::{Atom, Kind};

/// The input/output relation realized by convergent algorithmic runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComputedRelation {
    Values(Vec<(Atom, Atom)>),
    /// Bounded to input streams up to some length.
    Streams(Vec<(Vec<Atom>, Vec<Atom>)>),
}

impl ComputedRelation {
    pub fn len(&self) -> usize {
        match self {
            ComputedRelation::Values(p) => p.len(),
            ComputedRelation::Streams(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every pair as a pair of sequences; value pairs become singletons.
    pub fn stream_pairs(&self) -> Vec<(Vec<Atom>, Vec<Atom>)> {
        match self {
            ComputedRelation::Values(p) => {
                p.iter().map(|(a, b)| (vec![a.clone()], vec![b.clone()])).collect()
            }
            ComputedRelation::Streams(p) => p.clone(),
        }
    }

    /// At most one output per input.
    pub fn is_functional(&self) -> bool {
        let pairs = self.stream_pairs();
        let inputs: HashSet<&Vec<Atom>> = pairs.iter().map(|(i, _)| i).collect();
        inputs.len() == pairs.len()
    }
}

/// Output indices reachable from the initial state of `din` (non-interactive).
pub(crate) fn reachable_outputs(space: &StateSpace, din: usize, mode: Mode) -> BTreeSet<usize> {
    let start = space.initial_states()[din];
    let mut seen = vec![false; space.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut outs = BTreeSet::new();
    while let Some(s) = queue.pop_front() {
        if space.state_kind(s) == StateKind::Final {
            outs.insert(space.dout_index(s).unwrap());
            continue;
        }
        for &t in space.successors(s, mode) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    outs
}

/// Output-index sequences of complete runs whose consumed input is exactly
/// `stream` (interactive), explored over (state, position, outputs so far).
pub(crate) fn stream_outputs(space: &StateSpace, stream: &[usize], mode: Mode) -> BTreeSet<Vec<usize>> {
    let start = (space.initial_states()[stream[0]], 1usize, Vec::<usize>::new());
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut found = BTreeSet::new();
    while let Some((s, pos, outs)) = queue.pop_front() {
        if space.state_kind(s) == StateKind::Final {
            if pos == stream.len() {
                let mut o = outs.clone();
                o.push(space.dout_index(s).unwrap());
                found.insert(o);
            }
            continue;
        }
        for &t in space.successors(s, mode) {
            let next = if space.state_kind(t) == StateKind::Interaction {
                if pos == stream.len() || space.din_index(t) != Some(stream[pos]) {
                    continue;
                }
                let mut o = outs.clone();
                o.push(space.dout_index(t).unwrap());
                (t, pos + 1, o)
            } else {
                (t, pos, outs.clone())
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    found
}

/// All input streams of length `1..=max_len`, shortest first, then in
/// lexicographic input-domain order.
pub(crate) fn streams_up_to(domain_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p| {
                (0..domain_len).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Relation computed by the proto-algorithm; `max_stream_len` bounds the
/// input streams considered for interactive models and is ignored otherwise.
pub fn computed_relation(space: &StateSpace, max_stream_len: usize) -> ComputedRelation {
    computed_relation_with(space, max_stream_len, Exec::default())
}

pub fn computed_relation_with(space: &StateSpace, max_stream_len: usize, exec: Exec) -> ComputedRelation {
    let din = space.input_domain();
    let dout = space.output_domain();
    match space.kind() {
        Kind::NonInteractive => {
            let inputs: Vec<usize> = (0..din.len()).collect();
            let per_input = exec::map(exec, &inputs, |&i| reachable_outputs(space, i, Mode::Algorithmic));
            let pairs = per_input
                .into_iter()
                .enumerate()
                .flat_map(|(i, outs)| {
                    outs.into_iter().map(move |o| (din[i].clone(), dout[o].clone()))
                })
                .collect();
            ComputedRelation::Values(pairs)
        }
        Kind::Interactive => {
            let streams = streams_up_to(din.len(), max_stream_len);
            let per_stream = exec::map(exec, &streams, |s| stream_outputs(space, s, Mode::Algorithmic));
            let mut pairs = Vec::new();
            for (s, outs) in streams.iter().zip(per_stream) {
                let input: Vec<Atom> = s.iter().map(|&i| din[i].clone()).collect();
                for o in outs {
                    pairs.push((input.clone(), o.iter().map(|&k| dout[k].clone()).collect()));
                }
            }
            ComputedRelation::Streams(pairs)
        }
    }
}

/// True iff a cycle of internal states is reachable from `s` under the
/// algorithmic step function.
pub fn divergence_reachable(space: &StateSpace, s: &State) -> Result<bool, Error> {
    let start = space.require(s)?;
    let mode = Mode::Algorithmic;
    let mut reach = vec![false; space.len()];
    let mut stack = vec![start];
    reach[start] = true;
    while let Some(u) = stack.pop() {
        for &t in space.successors(u, mode) {
            if !reach[t] {
                reach[t] = true;
                stack.push(t);
            }
        }
    }
    let internal = |u: usize| reach[u] && space.state_kind(u) == StateKind::Internal;

    // Kahn's algorithm on the reachable internal subgraph: a cycle exists iff
    // not every vertex can be peeled off.
    let n = space.len();
    let mut indeg = vec![0usize; n];
    for u in (0..n).filter(|&u| internal(u)) {
        for &t in space.successors(u, mode) {
            if internal(t) {
                indeg[t] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&u| internal(u) && indeg[u] == 0).collect();
    let mut removed = 0;
    while let Some(u) = queue.pop() {
        removed += 1;
        for &t in space.successors(u, mode) {
            if internal(t) {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
    }
    Ok(removed < (0..n).filter(|&u| internal(u)).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::ints;

    #[test]
    fn parity_relation() {
        let sp = StateSpace::new(&fixtures::parity()).unwrap();
        let rel = computed_relation(&sp, 1);
        let expected: Vec<(Atom, Atom)> = vec![
            (0.into(), "even".into()),
            (1.into(), "odd".into()),
            (2.into(), "even".into()),
            (3.into(), "odd".into()),
        ];
        assert_eq!(rel, ComputedRelation::Values(expected));
        assert!(rel.is_functional());
    }

    #[test]
    fn echo_relation_bounded_by_three() {
        let sp = StateSpace::new(&fixtures::echo()).unwrap();
        let rel = computed_relation(&sp, 3);
        let ComputedRelation::Streams(pairs) = &rel else { panic!() };
        assert_eq!(pairs.len(), 7);
        assert!(pairs.iter().all(|(i, o)| i == o && i.last() == Some(&Atom::Int(0))));
        assert_eq!(pairs[0], (ints([0]), ints([0])));
    }

    #[test]
    fn divergence() {
        let sp = StateSpace::new(&fixtures::parity()).unwrap();
        for s in sp.states() {
            assert!(!divergence_reachable(&sp, s).unwrap());
        }
        let sp = StateSpace::new(&fixtures::echo()).unwrap();
        assert!(!divergence_reachable(&sp, &State::initial(1)).unwrap());
        let sp = StateSpace::new(&fixtures::parity_loop()).unwrap();
        assert!(divergence_reachable(&sp, &State::initial(0)).unwrap());
        assert!(!divergence_reachable(&sp, &State::internal("v_fin", 0)).unwrap());
    }

    #[test]
    fn stream_enumeration_order() {
        let s = streams_up_to(2, 2);
        assert_eq!(s, vec![vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
