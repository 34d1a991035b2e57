//! Brute-force reference deciders for tiny models.
//!
//! Every subset of candidate pairs (and, for interactive models, every pair
//! of translation maps) is tried against the definitions clause by clause.
//! Pairs of states of different kinds can never occur in a simulation, so
//! they are left out of the subsets up front.

use crate::error::Error;
use crate::model::Kind;
use crate::semantics::{Mode, StateKind, StateSpace};

/// Largest product of state counts the oracle accepts.
pub const ORACLE_LIMIT: usize = 25;

fn all_functions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..k).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

/// Whether `rel` (a membership matrix over A x A' states) is a simulation
/// of A by A'.
fn is_simulation(a: &StateSpace, b: &StateSpace, mode: Mode, rel: &dyn Fn(usize, usize) -> bool) -> bool {
    let pairs: Vec<(usize, usize)> =
        (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).filter(|&(i, j)| rel(i, j)).collect();
    let inits = a
        .initial_states()
        .iter()
        .all(|&i| b.initial_states().iter().any(|&j| rel(i, j)));
    let fins = b.final_states().iter().all(|&j| a.final_states().iter().any(|&i| rel(i, j)));
    if !inits || !fins {
        return false;
    }
    let interactive = a.kind() == Kind::Interactive;
    for &(i, j) in &pairs {
        let transfer = a
            .successors(i, mode)
            .iter()
            .all(|&t| b.successors(j, mode).iter().any(|&u| rel(t, u)));
        let (ka, kb) = (a.state_kind(i), b.state_kind(j));
        let iff = |k: StateKind| (ka == k) == (kb == k);
        let kinds = iff(StateKind::Initial) && iff(StateKind::Final) && (!interactive || iff(StateKind::Internal));
        if !transfer || !kinds {
            return false;
        }
    }
    if !interactive {
        return true;
    }
    let phis_in = all_functions(a.input_domain().len(), b.input_domain().len());
    let phis_out = all_functions(b.output_domain().len(), a.output_domain().len());
    phis_in.iter().any(|phi_in| {
        phis_out.iter().any(|phi_out| {
            pairs.iter().all(|&(i, j)| {
                let din = match (a.din_index(i), b.din_index(j)) {
                    (None, None) => true,
                    (Some(x), Some(y)) => phi_in[x] == y,
                    _ => false,
                };
                let dout = match (a.dout_index(i), b.dout_index(j)) {
                    (None, None) => true,
                    (Some(x), Some(y)) => phi_out[y] == x,
                    _ => false,
                };
                din && dout
            })
        })
    })
}

fn exhaustive(a: &StateSpace, b: &StateSpace, mode: Mode, both_ways: bool) -> Result<bool, Error> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch { expected: a.kind(), found: b.kind() });
    }
    let size = a.len() * b.len();
    if size > ORACLE_LIMIT {
        return Err(Error::OracleBound(size));
    }
    let candidates: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| a.state_kind(i) == b.state_kind(j))
        .collect();
    let m = b.len();
    let mut member = vec![false; size];
    for mask in 0u64..(1u64 << candidates.len()) {
        member.iter_mut().for_each(|x| *x = false);
        for (k, &(i, j)) in candidates.iter().enumerate() {
            if mask >> k & 1 == 1 {
                member[i * m + j] = true;
            }
        }
        let fwd = is_simulation(a, b, mode, &|i, j| member[i * m + j]);
        if fwd && (!both_ways || is_simulation(b, a, mode, &|j, i| member[i * m + j])) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether any simulation of A by A' exists, by exhaustive search.
pub fn oracle_simulation_exists(a: &StateSpace, b: &StateSpace, mode: Mode) -> Result<bool, Error> {
    exhaustive(a, b, mode, false)
}

/// Whether any relation R exists with R simulating A by A' and its inverse
/// simulating A' by A, by exhaustive search.
pub fn oracle_equivalence_exists(a: &StateSpace, b: &StateSpace, mode: Mode) -> Result<bool, Error> {
    exhaustive(a, b, mode, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_enumeration() {
        assert_eq!(all_functions(2, 2).len(), 4);
        assert_eq!(all_functions(0, 3), vec![Vec::<usize>::new()]);
    }
}
