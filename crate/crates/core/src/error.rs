use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An exhaustive enumeration would exceed the configured guard.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity { what: &'static str, needed: u128, limit: u128 },
    /// Arithmetic on instance values would not fit the scalar type.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
