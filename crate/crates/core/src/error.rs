use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Domain` marks inputs outside an operation's mathematical domain,
/// `Validation` marks malformed data (invariant violations at construction),
/// and `Capacity` marks combinatorial guards on exact enumeration paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("capacity guard exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}
