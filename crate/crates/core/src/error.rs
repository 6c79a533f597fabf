use thiserror::Error;

/// Errors raised by the exact-arithmetic engine and the modules built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient {0} is not invertible")]
    NonInvertibleLeading(String),
    #[error("exact division left a nonzero remainder: {0}")]
    NonzeroRemainder(String),
    #[error("series precondition violated: {0}")]
    Precondition(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("cannot add quantities carrying different powers of -i ({0} vs {1})")]
    IpowMismatch(i32, i32),
    #[error("non-integral exponent of u: {0}")]
    HalfIntegralExponent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
