use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("t has no inverse modulo (1 - t)^0")]
    NoUnitModulus,

    #[error("series divisor has zero constant term")]
    ZeroConstantTerm,

    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("subspace {index} equals the whole ambient space (its ideal is zero)")]
    FullSubspace { index: usize },

    #[error("{m} subspaces exceed the configured cap of {cap}")]
    TooManySubspaces { m: usize, cap: usize },

    #[error("{count} monomials exceed the configured cap of {cap}")]
    TooManyMonomials { count: usize, cap: usize },

    #[error("could not draw a full-rank basis of dimension {dim} in {ambient} after {attempts} attempts")]
    RankNotAchieved {
        dim: usize,
        ambient: usize,
        attempts: usize,
    },

    #[error("coefficient of t^{index} in p(t) has the wrong sign for a linear resolution")]
    SignAlternation { index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inconsistent Hilbert data: {0}")]
    Inconsistent(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}
