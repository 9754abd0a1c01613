use thiserror::Error;

/// Errors raised by the library. Negative mathematical findings (a failed
/// admissibility check, a missing fixed point) are reported as data, not as
/// errors; these variants cover malformed or out-of-contract input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("constructor error: {0}")]
    Constructor(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn structure(msg: impl Into<String>) -> Error {
    Error::Structure(msg.into())
}

pub(crate) fn scope(msg: impl Into<String>) -> Error {
    Error::Scope(msg.into())
}

pub(crate) fn constructor(msg: impl Into<String>) -> Error {
    Error::Constructor(msg.into())
}
