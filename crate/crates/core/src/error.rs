use thiserror::Error;

/// Errors raised by the arithmetic layers and the protocols built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid ring description: {0}")]
    InvalidRing(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("variable index {index} out of range for {n_vars} variables")]
    VariableOutOfRange { index: usize, n_vars: usize },
    #[error("cannot build a polynomial with {n_terms} terms and total degree {degree}")]
    ImpossibleShape { degree: u32, n_terms: usize },
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("degenerate constant polynomial: {0}")]
    InvalidConstantPolynomial(String),
    #[error("gave up after {0} resampling attempts")]
    ResampleExhausted(usize),
    #[error("protocol precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("message encoding: {0}")]
    Encoding(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
