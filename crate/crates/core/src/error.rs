use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("denominator of {0} is not a power of {1}")]
    NotPrimePowerDenominator(String, u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("mismatched base rings: {0} vs {1}")]
    BaseRingMismatch(String, String),
    #[error("scalar {0} does not lie in {1}")]
    ScalarOutsideRing(String, String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("unsupported differential: {0}")]
    UnsupportedDifferential(String),
    #[error("degree {degree} lies outside the trust window (resolution length {length})")]
    OutsideTrustWindow { degree: i64, length: usize },
    #[error("shape outside the supported universe: {0}")]
    UnsupportedShape(String),
    #[error("incompatible shapes: {0}")]
    IncompatibleShapes(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
