use std::path::PathBuf;

use thiserror::Error;

/// Failures that map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] spinor_lab_core::Error),
}
