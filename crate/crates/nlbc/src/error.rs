use std::path::PathBuf;

use nlbc_core::Error as CoreError;

/// Everything the front end can fail with, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or schema-violating configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Well-formed input that the problem class rejects.
    #[error("{0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// The verify task ran but some property failed.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {message}")]
    Output { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Validation(_) => 2,
            CliError::Numerical(_) | CliError::Verification(_) => 3,
            CliError::Output { .. } => 1,
        }
    }

    pub(crate) fn output(path: impl Into<PathBuf>, e: impl std::fmt::Display) -> Self {
        CliError::Output {
            path: path.into(),
            message: e.to_string(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        use CoreError::*;
        match e {
            BracketExhausted { .. } | NotAnEigenvalue { .. } | NotPositiveDefinite { .. } | Singular { .. } | NoConvergence(_) => {
                CliError::Numerical(e.to_string())
            }
            Infeasible { residual } => {
                CliError::Validation(format!("initial data infeasible: moment residual {residual:.3e}"))
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
