//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A nonzero element failed to invert. For a tower this proves the
    /// minimal polynomial of the named step is reducible, which makes the
    /// spec itself invalid.
    #[error("zero divisor encountered: step `{step}` has a reducible minimal polynomial")]
    ReducibleStep { step: String },

    #[error("elements belong to different tower specs")]
    SpecMismatch,

    #[error("tower step `{0}` not found")]
    UnknownStep(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("conjugate roots of step `{step}` not all found in the tower")]
    ConjugateRootsMissing { step: String },

    #[error("no admissible prime <= {qmax}")]
    NoAdmissiblePrime { qmax: u64 },

    #[error("placement inadmissible: {0}")]
    InadmissiblePlacement(String),

    #[error("work bound exceeded ({spent} > {limit} units); raise the bound to continue")]
    WorkBoundExceeded { spent: u64, limit: u64 },

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("descent failed: coefficient {index} has a nonzero coordinate outside the target subtower")]
    DescentFailed { index: usize },

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
