use thiserror::Error;

/// Failures reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not coprime: {0}")]
    NotCoprime(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("matrix is not special linear: {0}")]
    NotSpecialLinear(String),
    #[error("too large: {0}")]
    TooLarge(String),
    /// A constructed object failed its own postcondition check.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    /// Stable name of the variant, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::NotCoprime(_) => "NotCoprime",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotAUnit(_) => "NotAUnit",
            Error::NotSpecialLinear(_) => "NotSpecialLinear",
            Error::TooLarge(_) => "TooLarge",
            Error::VerificationFailed(_) => "VerificationFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
