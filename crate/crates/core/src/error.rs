use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative value {0} is not allowed")]
    NegativeValue(i64),
    #[error("operation requires a non-empty set")]
    EmptySet,
    #[error("precision must be at least 2, got {0}")]
    InvalidPrecision(u64),
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(u64, u64),
    #[error("set is not mu-canonical for precision {0}")]
    NotCanonical(u64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("value {0} is not an element of the set")]
    NotInSet(u64),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("recovery failed for value {0}")]
    RecoveryFailed(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
