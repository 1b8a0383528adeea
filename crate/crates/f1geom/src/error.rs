use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violated a precondition of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured enumeration bound was exceeded. The computation is
    /// well defined but too large for the requested budget.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// A mathematical identity that must hold failed to verify.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
