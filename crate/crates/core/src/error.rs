//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("q is not generic: {0}")]
    NonGenericQ(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("position out of range: {0}")]
    PositionOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("R-matrix is not invertible by column (reshuffle singular)")]
    NotColumnInvertible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate entry for indices {0}")]
    DuplicateEntry(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("symmetry is not even: {0}")]
    NotEven(String),
    #[error("operator does not have rank one: {0}")]
    RankNotOne(String),
    #[error("frame identity violated: {0}")]
    IdentityViolated(String),
    #[error("the two chain orderings disagree: {0}")]
    ChainMismatch(String),
    #[error("operand is not an endomorphism of the object: {0}")]
    NotEndomorphism(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("Poincaré relation violated: {0}")]
    RelationViolated(String),
    #[error("symmetry must be validated before use")]
    Unvalidated,
    #[error("operator dimension {0} exceeds the configured limit {1}")]
    DimensionLimit(usize, usize),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
