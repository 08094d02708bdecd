use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cardinality constraint: k = {k} with {n_real} real elements")]
    InvalidConstraint { k: usize, n_real: usize },

    #[error("element id {id} is outside the ground set of {total} ids")]
    InvalidElement { id: usize, total: usize },

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("objective mismatch: expected {expected}, found {found}")]
    WrongObjective {
        expected: &'static str,
        found: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("brute force refuses n = {n} real elements (limit {limit})")]
    SizeGuard { n: usize, limit: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            _ => 1,
        }
    }
}
