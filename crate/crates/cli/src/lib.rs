//! Command-line front end for Orthoglide synthesis, verification and
//! workspace exploration.

pub mod args;
pub mod report;
pub mod run;
pub mod verify;

use std::path::PathBuf;

use thiserror::Error;

pub use args::{parse_args, RunConfig};
pub use run::{execute, run, Outcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Numeric(#[from] orthoglide::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: 1 usage, 2 failed check, 3 numeric or output failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Numeric(_) | CliError::Io { .. } | CliError::Json(_) => 3,
        }
    }
}
