//! States, the algorithmic and computational step functions, runs and the
//! computed relation.

mod relation;
mod runs;
mod space;
mod state;

pub use relation::{computed_relation, computed_relation_with, divergence_reachable, ComputedRelation};
pub(crate) use relation::{reachable_outputs, stream_outputs, streams_up_to};
pub use runs::{
    extract_inputs, extract_output, extract_outputs, run_set, semi_runs, Run, RunSet, RunStatus,
};
pub use space::{astep, cstep, enumerate_states, StateSpace};
pub use state::{State, StateKind};

/// Which step function drives a run or a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every step, condition inspections included.
    Algorithmic,
    /// Condition inspections collapsed into the step that follows them.
    Computational,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Algorithmic => "algorithmic",
            Mode::Computational => "computational",
        }
    }
}
