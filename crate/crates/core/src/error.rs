use thiserror::Error;

use crate::model::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("model is not valid: {}", .0.summary())]
    Invalid(ValidationReport),
    #[error("expected a {expected} proto-algorithm, found a {found} one")]
    KindMismatch {
        expected: crate::model::Kind,
        found: crate::model::Kind,
    },
    #[error("state {0} is not a state of this proto-algorithm")]
    UnknownState(String),
    #[error("run is not complete")]
    IncompleteRun,
    #[error("atom `{atom}` is not in the {domain}")]
    AtomOutsideDomain { atom: String, domain: &'static str },
    #[error("input stream must be non-empty")]
    EmptyStream,
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("state-space product {0} exceeds the oracle bound of 25 pairs")]
    OracleBound(usize),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("expansion is not valid: {}", .0.summary())]
    InvalidExpansion(ValidationReport),
}
