//! Library side of the `pairwell` binary: configuration and subcommands.

pub mod commands;
pub mod config;

use std::fmt;

pub use config::{ConfigError, RunConfig};

/// Failure of a subcommand, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Config(String),
    /// Failure while computing or writing results: exit code 3.
    Numerics(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerics(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerics(m) => write!(f, "numerics failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<pairwell_core::Error> for CliError {
    fn from(e: pairwell_core::Error) -> Self {
        use pairwell_core::Error as E;
        let root = match &e {
            E::SweepPoint { source, .. } => source.as_ref(),
            other => other,
        };
        match root {
            E::InvalidGrid(_) | E::InvalidParameter(_) | E::NoCrossing { .. } => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numerics(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerics(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
