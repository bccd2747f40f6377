use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// An argument lies outside the domain of the operation (e.g. a zero fuzzy subset
    /// passed to an extended hyperoperation).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("budget exceeded: {what} needs {needed}, bound is {bound}")]
    Budget {
        what: String,
        needed: u128,
        bound: u128,
    },

    #[error("grade {0} lies outside [0, 1]")]
    GradeRange(String),

    #[error("duplicate carrier label {0:?}")]
    DuplicateLabel(String),

    #[error("table {table} has no entry for tuple ({tuple})")]
    Totality { table: String, tuple: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// An internal postcondition failed. Seeing this means a kernel routine disagrees with
    /// a result it must satisfy; the message carries the witness.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
