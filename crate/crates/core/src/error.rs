use thiserror::Error;

/// Errors reported by the bound pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameters outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Incompatible arities or vector lengths.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A configured enumeration or grid budget would be exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// A requested certification tolerance could not be met.
    #[error("certification failed: {0}")]
    CertificationFailed(String),

    /// Malformed textual input (forms, reports, parameter strings).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
