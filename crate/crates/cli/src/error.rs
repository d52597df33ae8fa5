//! CLI error type with the exit-code split between configuration/usage
//! problems and numerical failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad usage, unreadable/invalid config or input file: exit code 1.
    #[error("{0}")]
    Config(String),
    /// The solver or fitting pipeline failed: exit code 2.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<trishell_core::Error> for CliError {
    fn from(err: trishell_core::Error) -> Self {
        CliError::Numerical(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Config(format!("io error: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
