use thiserror::Error;

/// Errors produced by problem construction, analysis and code search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value violates a structural invariant (out-of-range index,
    /// duplicate receiver, malformed partition, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Serialized input does not follow the documented JSON schema.
    #[error("format error: {0}")]
    Format(String),

    /// An instance is too large for the requested computation.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An operation was called outside its precondition.
    #[error("contract violated: {0}")]
    Contract(String),

    /// Two independent routes disagree. Seeing this means a lower bound or an
    /// exact-rate rule has been falsified, or there is a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
