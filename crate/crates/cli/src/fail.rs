//! Failures and their exit codes.

use std::fmt;

use thetadelta::Error;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, configuration or expression: exit code 1.
    Usage(String),
    /// The computation itself failed: exit code 2.
    Compute(String),
    /// Some check did not pass: exit code 3.
    Verification(usize),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Compute(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    /// Errors in user input map to usage failures, everything else to
    /// computation failures.
    pub fn from_core(e: Error) -> Self {
        match e.root() {
            Error::Parse(_) | Error::UnknownCheck(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Compute(m) => write!(f, "error: {m}"),
            Failure::Verification(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}
