//! Error type and process exit-code policy.

use std::fmt;

use phasegate_core::CoreError;

/// Errors surfaced by the command-line layer, classified by exit code:
/// configuration problems (bad flags, malformed or inconsistent config
/// files, unwritable output) exit with 1, numerical failures during a
/// computation exit with 2.
#[derive(Debug)]
pub enum CliError {
    /// Anything wrong with the requested run before numerics start.
    Config(String),
    /// A computation that was set up correctly failed while running.
    Numerical(String),
}

/// Result alias for the command-line layer.
pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// Process exit code mandated for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }

    /// Convenience constructor for configuration errors.
    pub fn config(msg: impl Into<String>) -> CliError {
        CliError::Config(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Numerical(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Core errors that escape into the runner are numerical by default;
/// construction-time validation wraps them into `Config` explicitly where
/// the cause is a user-supplied parameter.
impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        CliError::Numerical(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Config(err.to_string())
    }
}
