use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("subset is over a universe of {subset} elements but the ground set has {ground}")]
    GroundMismatch { ground: usize, subset: usize },

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("exhaustive {what} needs n <= {cap}, got n = {n}")]
    CapExceeded { what: &'static str, cap: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("set is not independent")]
    Dependent,

    #[error("set is not a basis")]
    NotBasis,

    #[error("out of domain: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("instance schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
