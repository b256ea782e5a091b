use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("divergent: {0}")]
    Divergence(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("functional is not a trace: {0}")]
    NotATrace(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not equivariant: {0}")]
    NotEquivariant(String),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("closure violated: {0}")]
    Closure(String),
    #[error("divisibility violated: {0}")]
    Divisibility(String),
    #[error("not covariant: {0}")]
    NotCovariant(String),
    #[error("hypotheses violated: {0}")]
    ConditionsViolated(String),
    #[error("insufficient zeros: {0}")]
    InsufficientZeros(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("invalid hodge data: {0}")]
    InvalidHodge(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
