use thiserror::Error;

/// Errors surfaced by polynomial construction, analysis operations, samplers,
/// and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: polynomial has {expected} variables, point has {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degree {got} exceeds the supported cap of {cap}")]
    DegreeCap { got: usize, cap: usize },

    #[error("exponent {got} exceeds the per-coordinate cap of {cap}")]
    ExponentCap { got: usize, cap: usize },

    #[error("multi-index has length {got}, polynomial has {expected} variables")]
    IndexLength { expected: usize, got: usize },

    #[error("operation requires the {expected:?} basis, polynomial is in the {got:?} basis")]
    BasisMismatch {
        expected: crate::poly::Basis,
        got: crate::poly::Basis,
    },

    #[error("restriction parameter lambda must lie in (0,1), got {0}")]
    LambdaRange(f64),

    #[error("moment order q must be an even integer >= 2, got {0}")]
    InvalidMomentOrder(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature node count must lie in 1..=32, got {0}")]
    NodeCountRange(usize),

    #[error("k-wise sampler: {0}")]
    KwiseConfig(String),

    #[error("polynomial file is not in canonical form: {0}")]
    PolyFormat(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
