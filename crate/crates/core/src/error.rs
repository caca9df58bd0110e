use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data (shapes, failed axioms, bad maps).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Matrices or structures over different fields were combined.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    /// A well-formed input that the requested operation does not accept,
    /// e.g. a noncommutative algebra passed to the Kähler construction.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal identity that must hold by construction failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}
