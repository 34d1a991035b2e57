//! Greatest simulations and equivalences by fixed-point pruning.
//!
//! Candidate pairs start as every kind-compatible pair and are pruned until
//! the transfer condition holds (one-sided for simulation, two-sided for
//! equivalence). For interactive models the translation maps are searched
//! depth-first in canonical order: each partial assignment removes the pairs
//! it contradicts, and since pruning is monotone a partial assignment whose
//! fixed point already breaks coverage cannot be completed.

use crate::error::Error;
use crate::exec::{self, Exec};
use crate::model::{Atom, Kind};
use crate::semantics::{Mode, StateKind, StateSpace};

use super::witness::{EquivalenceWitness, SimulationWitness};

/// One translation map; `None` entries are unassigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MapId {
    /// A inputs to A' inputs.
    In,
    /// A' outputs to A outputs.
    Out,
    /// A' inputs to A inputs (equivalence only).
    BackIn,
    /// A outputs to A' outputs (equivalence only).
    BackOut,
}

#[derive(Debug, Clone)]
struct Maps {
    phi_in: Vec<Option<usize>>,
    phi_out: Vec<Option<usize>>,
    back_in: Vec<Option<usize>>,
    back_out: Vec<Option<usize>>,
}

impl Maps {
    fn get_mut(&mut self, id: MapId) -> &mut Vec<Option<usize>> {
        match id {
            MapId::In => &mut self.phi_in,
            MapId::Out => &mut self.phi_out,
            MapId::BackIn => &mut self.back_in,
            MapId::BackOut => &mut self.back_out,
        }
    }
}

struct Product<'a> {
    a: &'a StateSpace,
    b: &'a StateSpace,
    mode: Mode,
    two_sided: bool,
    exec: Exec,
}

impl Product<'_> {
    fn m(&self) -> usize {
        self.b.len()
    }

    fn compatible(&self, i: usize, j: usize) -> bool {
        let (ka, kb) = (self.a.state_kind(i), self.b.state_kind(j));
        match self.a.kind() {
            Kind::Interactive => ka == kb,
            Kind::NonInteractive => {
                let same = |k| (ka == k) == (kb == k);
                same(StateKind::Initial) && same(StateKind::Final)
            }
        }
    }

    fn allowed(&self, maps: &Maps, i: usize, j: usize) -> bool {
        if let (Some(x), Some(y)) = (self.a.din_index(i), self.b.din_index(j)) {
            if maps.phi_in[x].is_some_and(|v| v != y) || maps.back_in.get(y).copied().flatten().is_some_and(|v| v != x) {
                return false;
            }
        }
        if let (Some(x), Some(y)) = (self.a.dout_index(i), self.b.dout_index(j)) {
            if maps.phi_out[y].is_some_and(|v| v != x) || maps.back_out.get(x).copied().flatten().is_some_and(|v| v != y) {
                return false;
            }
        }
        true
    }

    fn initial_pairs(&self) -> Vec<usize> {
        let m = self.m();
        (0..self.a.len())
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.compatible(i, j))
            .map(|(i, j)| i * m + j)
            .collect()
    }

    fn transfers(&self, set: &[bool], i: usize, j: usize) -> bool {
        let m = self.m();
        let sa = self.a.successors(i, self.mode);
        let sb = self.b.successors(j, self.mode);
        let fwd = sa.iter().all(|&t| sb.iter().any(|&u| set[t * m + u]));
        fwd && (!self.two_sided || sb.iter().all(|&u| sa.iter().any(|&t| set[t * m + u])))
    }

    /// Greatest fixed point below `list`. Each round removes, in one batch,
    /// every pair failing transfer against the current set; such pairs fail
    /// against every subset too, so the result is the greatest fixed point.
    fn prune(&self, mut list: Vec<usize>) -> (Vec<bool>, Vec<usize>) {
        let m = self.m();
        let mut set = vec![false; self.a.len() * m];
        for &k in &list {
            set[k] = true;
        }
        loop {
            let failing = exec::filter_indices(self.exec, list.len(), |x| {
                let k = list[x];
                !self.transfers(&set, k / m, k % m)
            });
            if failing.is_empty() {
                return (set, list);
            }
            for &x in &failing {
                set[list[x]] = false;
            }
            list.retain(|&k| set[k]);
        }
    }

    fn covered(&self, set: &[bool]) -> bool {
        let m = self.m();
        let (a, b) = (self.a, self.b);
        let some = |from: &[usize], to: &[usize], flip: bool| {
            from.iter().all(|&x| {
                to.iter().any(|&y| if flip { set[y * m + x] } else { set[x * m + y] })
            })
        };
        let fwd = some(a.initial_states(), b.initial_states(), false)
            && some(b.final_states(), a.final_states(), true);
        fwd && (!self.two_sided
            || (some(b.initial_states(), a.initial_states(), true)
                && some(a.final_states(), b.final_states(), false)))
    }

    fn variables(&self) -> Vec<(MapId, usize, usize)> {
        let (a, b) = (self.a, self.b);
        let mut vars = Vec::new();
        if a.kind() == Kind::NonInteractive {
            return vars;
        }
        vars.extend((0..a.input_domain().len()).map(|x| (MapId::In, x, b.input_domain().len())));
        vars.extend((0..b.output_domain().len()).map(|y| (MapId::Out, y, a.output_domain().len())));
        if self.two_sided {
            vars.extend((0..b.input_domain().len()).map(|y| (MapId::BackIn, y, a.input_domain().len())));
            vars.extend((0..a.output_domain().len()).map(|x| (MapId::BackOut, x, b.output_domain().len())));
        }
        vars
    }

    fn empty_maps(&self) -> Maps {
        let (a, b) = (self.a, self.b);
        let back = |n: usize| if self.two_sided { vec![None; n] } else { Vec::new() };
        Maps {
            phi_in: vec![None; a.input_domain().len()],
            phi_out: vec![None; b.output_domain().len()],
            back_in: back(b.input_domain().len()),
            back_out: back(a.output_domain().len()),
        }
    }

    /// Restrict `list` to pairs compatible with `maps`, prune, and check
    /// coverage.
    fn node(&self, maps: &Maps, list: &[usize]) -> Option<(Vec<bool>, Vec<usize>)> {
        let m = self.m();
        let kept: Vec<usize> = list.iter().copied().filter(|&k| self.allowed(maps, k / m, k % m)).collect();
        let (set, kept) = self.prune(kept);
        self.covered(&set).then_some((set, kept))
    }

    fn dfs(&self, vars: &[(MapId, usize, usize)], depth: usize, maps: &mut Maps, list: &[usize]) -> Option<(Maps, Vec<usize>)> {
        let (_, kept) = self.node(maps, list)?;
        let Some(&(id, slot, range)) = vars.get(depth) else {
            return Some((maps.clone(), kept));
        };
        for value in 0..range {
            maps.get_mut(id)[slot] = Some(value);
            if let Some(found) = self.dfs(vars, depth + 1, maps, &kept) {
                return Some(found);
            }
        }
        maps.get_mut(id)[slot] = None;
        None
    }

    /// First consistent (maps, relation) in canonical map order.
    fn search(&self) -> Option<(Maps, Vec<usize>)> {
        let vars = self.variables();
        let (_, root) = self.node(&self.empty_maps(), &self.initial_pairs())?;
        if vars.is_empty() {
            return Some((self.empty_maps(), root));
        }

        // Expand a few levels breadth-first so parallel workers have enough
        // independent subtrees, then search each subtree sequentially.
        let mut frontier = vec![(self.empty_maps(), root)];
        let mut depth = 0;
        while depth < vars.len() && frontier.len() < 64 {
            let (id, slot, range) = vars[depth];
            let mut next = Vec::new();
            for (maps, list) in &frontier {
                for value in 0..range {
                    let mut child = maps.clone();
                    child.get_mut(id)[slot] = Some(value);
                    if let Some((_, kept)) = self.node(&child, list) {
                        next.push((child, kept));
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        exec::find_map_first(self.exec, &frontier, |(maps, list)| {
            let mut maps = maps.clone();
            self.dfs(&vars, depth, &mut maps, list)
        })
    }
}

fn check_kinds(a: &StateSpace, b: &StateSpace) -> Result<(), Error> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch { expected: a.kind(), found: b.kind() });
    }
    Ok(())
}

type AtomPairs = Vec<(Atom, Atom)>;

/// Translation maps as indices into the two domains.
type IndexMaps<'a> = (&'a [Option<usize>], &'a [Option<usize>]);

/// Read the first related partner of each initial and final state off the
/// relation, as the non-interactive maps are defined.
fn induced_maps(a: &StateSpace, b: &StateSpace, rel: &[(usize, usize)]) -> (AtomPairs, AtomPairs) {
    let mut phi_in = Vec::new();
    for &i in a.initial_states() {
        if let Some(&(_, j)) = rel.iter().find(|&&(x, y)| x == i && b.state_kind(y) == StateKind::Initial) {
            phi_in.push((a.state(i).din.clone().unwrap(), b.state(j).din.clone().unwrap()));
        }
    }
    let mut phi_out = Vec::new();
    for &j in b.final_states() {
        if let Some(&(i, _)) = rel.iter().find(|&&(x, y)| y == j && a.state_kind(x) == StateKind::Final) {
            phi_out.push((b.state(j).dout.clone().unwrap(), a.state(i).dout.clone().unwrap()));
        }
    }
    (phi_in, phi_out)
}

fn witness(
    a: &StateSpace,
    b: &StateSpace,
    mode: Mode,
    rel: &[(usize, usize)],
    maps: Option<IndexMaps>,
) -> SimulationWitness {
    let pairs = rel.iter().map(|&(i, j)| (a.state(i).clone(), b.state(j).clone())).collect();
    let (phi_in, phi_out) = match maps {
        Some((fin, fout)) => (
            fin.iter().enumerate().map(|(x, y)| (a.input_domain()[x].clone(), b.input_domain()[y.unwrap()].clone())).collect(),
            fout.iter().enumerate().map(|(y, x)| (b.output_domain()[y].clone(), a.output_domain()[x.unwrap()].clone())).collect(),
        ),
        None => induced_maps(a, b, rel),
    };
    SimulationWitness { mode, pairs, phi_in, phi_out }
}

fn decode(m: usize, list: &[usize]) -> Vec<(usize, usize)> {
    let mut rel: Vec<(usize, usize)> = list.iter().map(|&k| (k / m, k % m)).collect();
    rel.sort_unstable();
    rel
}

/// Largest simulation of A by A' (for interactive models: the largest one
/// under the first translation maps, in canonical order, that admit one).
/// `None` when A' does not simulate A.
pub fn greatest_simulation(a: &StateSpace, b: &StateSpace, mode: Mode) -> Result<Option<SimulationWitness>, Error> {
    greatest_simulation_with(a, b, mode, Exec::default())
}

pub fn greatest_simulation_with(
    a: &StateSpace,
    b: &StateSpace,
    mode: Mode,
    exec: Exec,
) -> Result<Option<SimulationWitness>, Error> {
    check_kinds(a, b)?;
    let product = Product { a, b, mode, two_sided: false, exec };
    Ok(product.search().map(|(maps, list)| {
        let rel = decode(b.len(), &list);
        let fixed = (a.kind() == Kind::Interactive).then_some((&maps.phi_in[..], &maps.phi_out[..]));
        witness(a, b, mode, &rel, fixed)
    }))
}

/// Largest relation R such that R simulates A by A' and its inverse
/// simulates A' by A; `None` when A and A' are not equivalent.
pub fn check_equivalence(a: &StateSpace, b: &StateSpace, mode: Mode) -> Result<Option<EquivalenceWitness>, Error> {
    check_equivalence_with(a, b, mode, Exec::default())
}

pub fn check_equivalence_with(
    a: &StateSpace,
    b: &StateSpace,
    mode: Mode,
    exec: Exec,
) -> Result<Option<EquivalenceWitness>, Error> {
    check_kinds(a, b)?;
    let product = Product { a, b, mode, two_sided: true, exec };
    Ok(product.search().map(|(maps, list)| {
        let rel = decode(b.len(), &list);
        let mut inverse: Vec<(usize, usize)> = rel.iter().map(|&(i, j)| (j, i)).collect();
        inverse.sort_unstable();
        let interactive = a.kind() == Kind::Interactive;
        EquivalenceWitness {
            forward: witness(a, b, mode, &rel, interactive.then_some((&maps.phi_in[..], &maps.phi_out[..]))),
            backward: witness(b, a, mode, &inverse, interactive.then_some((&maps.back_in[..], &maps.back_out[..]))),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::witness::{validate_equivalence_witness, validate_simulation_witness};
    use crate::fixtures;

    fn space(pa: crate::model::ProtoAlgorithm) -> StateSpace {
        StateSpace::new(&pa).unwrap()
    }

    #[test]
    fn self_simulation_is_valid() {
        for (_, pa) in fixtures::primary() {
            let sp = space(pa);
            for mode in [Mode::Algorithmic, Mode::Computational] {
                let w = greatest_simulation(&sp, &sp, mode).unwrap().expect("reflexive");
                assert!(validate_simulation_witness(&sp, &sp, &w).is_empty());
                let e = check_equivalence(&sp, &sp, mode).unwrap().expect("reflexive");
                assert!(validate_equivalence_witness(&sp, &sp, &e).is_empty());
            }
        }
    }

    #[test]
    fn modes_separate_on_predicate_variant() {
        let a = space(fixtures::parity());
        let b = space(fixtures::parity_pred());
        assert!(check_equivalence(&a, &b, Mode::Algorithmic).unwrap().is_none());
        assert!(check_equivalence(&a, &b, Mode::Computational).unwrap().is_some());
    }

    #[test]
    fn echo_is_not_equivalent_to_constant_output() {
        let a = space(fixtures::echo());
        let b = space(fixtures::echo_const0());
        assert!(check_equivalence(&a, &b, Mode::Algorithmic).unwrap().is_none());
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let a = space(fixtures::parity());
        let b = space(fixtures::echo());
        assert!(matches!(greatest_simulation(&a, &b, Mode::Algorithmic), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = space(fixtures::echo());
        let b = space(fixtures::echo_const0());
        for mode in [Mode::Algorithmic, Mode::Computational] {
            let s = greatest_simulation_with(&a, &b, mode, Exec::Sequential).unwrap();
            let p = greatest_simulation_with(&a, &b, mode, Exec::Parallel).unwrap();
            assert_eq!(s, p);
        }
    }
}
