use thiserror::Error;

/// Errors raised by the face pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("input domain: {0}")]
    InputDomain(String),
    /// An exact computation produced a value that violates a proven identity.
    #[error("internal consistency: {0}")]
    InternalConsistency(String),
    /// A value did not fit the fixed-width integer used to carry it.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::InputDomain(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::InternalConsistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
