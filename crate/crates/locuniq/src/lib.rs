//! Command-line companion to `locuniq-core`: parallel Monte Carlo drivers, the
//! exhaustive oracle check, CSV/JSON/SVG output and JSON config files.

pub mod check;
pub mod cli;
pub mod config;
pub mod output;
pub mod parallel;
pub mod svg;

/// Failure of a CLI command. Each variant maps to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] locuniq_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    /// The oracle check found disagreements.
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::CheckFailed(_) => 1,
            Self::Core(_) | Self::Usage(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}
