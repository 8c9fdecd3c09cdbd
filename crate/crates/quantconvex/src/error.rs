use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty polytope")]
    EmptyPolytope,

    #[error("unbounded body")]
    Unbounded,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("approximate-mode scalar reached a certified path")]
    ApproximateInCertifiedPath,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
