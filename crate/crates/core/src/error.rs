use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("operation requires a 0/1 instance")]
    NotBinary,

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("point is not feasible")]
    InfeasiblePoint,

    #[error("oracle search exceeded the node cap of {cap}")]
    ResourceLimit { cap: u64 },

    #[error("max-ratio query requires an anchor point")]
    MissingAnchor,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("algorithm not applicable: {0}")]
    NotApplicable(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
