use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A denominator vanished at an evaluation point; callers retry with a
    /// different point.
    #[error("denominator vanishes at the evaluation point")]
    Pole,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("{0}")]
    Parse(#[from] crate::dsl::ParseError),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("internal error: {0}")]
    Internal(String),

    /// An evaluation error tagged with the expression node it came from.
    #[error("at line {line}, column {column}: {source}")]
    Located { line: usize, column: usize, source: Box<Error> },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// The error with any location tags removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
