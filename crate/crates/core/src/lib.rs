//! Proto-algorithms over finite domains.
//!
//! A proto-algorithm is an alphabet of function and predicate symbols, a
//! rooted algorithm graph labeled with those symbols, and an interpretation
//! assigning finite lookup tables to every symbol. Two kinds exist:
//! non-interactive ones read one input and write one output; interactive ones
//! additionally alternate `out`/`in` steps that emit an output and consume the
//! next input.
//!
//! The crate validates models ([`model`]), executes their step semantics and
//! computes what they compute ([`semantics`]), decides isomorphism,
//! simulation and equivalence with checkable witnesses ([`equivalence`]),
//! embeds non-interactive models into trivial interactive ones ([`bridge`]),
//! and reads/writes the JSON definition and witness formats ([`format`]).

pub mod error;
pub mod exec;
pub mod fixtures;
pub mod format;
pub mod bridge;
pub mod equivalence;
pub mod model;
pub mod random;
pub mod semantics;

pub use error::Error;
pub use exec::Exec;
