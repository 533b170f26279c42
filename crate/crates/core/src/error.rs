use thiserror::Error;

/// Errors raised by the decision procedures and counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NonPositive(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("index {index} out of range 0..={bound}")]
    IndexOutOfRange { index: i64, bound: i64 },

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("zero vector has no rank-one criterion")]
    ZeroVector,

    #[error("operation needs a ring with {expected} factors, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("ring order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: String, cap: u64 },

    #[error("invalid Goursat tuple: {0}")]
    InvalidTuple(String),

    #[error("subgroup has not been materialized")]
    NotMaterialized,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
