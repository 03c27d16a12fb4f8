//! Command-line front end for the Partition approximation scheme: instance
//! parsing, report rendering, an exact-oracle mode and a benchmark harness.

pub mod bench;
pub mod commands;
pub mod input;
pub mod report;

use partition_fptas::Error as CoreError;
use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const MALFORMED_INPUT: i32 = 2;
    pub const LIMITS: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, or an invalid option value.
    Input(String),
    /// Arithmetic overflow or a configured limit was hit.
    Limits(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::MALFORMED_INPUT,
            CliError::Limits(_) => exit::LIMITS,
            CliError::Other(_) => exit::FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "malformed input: {m}"),
            CliError::Limits(m) => write!(f, "limit exceeded: {m}"),
            CliError::Other(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::LimitExceeded(m) => CliError::Limits(m),
            CoreError::Overflow(_) => CliError::Limits(e.to_string()),
            CoreError::NegativeValue(_)
            | CoreError::InvalidInstance(_)
            | CoreError::InvalidPrecision(_) => CliError::Input(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
