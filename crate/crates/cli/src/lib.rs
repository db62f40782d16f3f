//! Command-line front end: single-instance queries, batch tables and the
//! verification suite.

pub mod app;
pub mod json;
pub mod table;
pub mod verify;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tricover_core::Error),
    #[error("ideal index {index} out of range: {count} ideals above p = {p}")]
    NoSuchIdeal { index: usize, count: usize, p: u64 },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid list entry {0:?}")]
    BadList(String),
    #[error("verification failed")]
    VerifyFailed { code: i32 },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// Process exit status for a library error.
pub fn core_exit_code(e: &tricover_core::Error) -> i32 {
    use tricover_core::Error as E;
    match e {
        E::InvalidQ(_) | E::NotPrime(_) | E::Precondition(_) => EXIT_PRECONDITION,
        E::OracleMismatch { .. } | E::PredictionMismatch(_) => EXIT_MISMATCH,
        E::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_OTHER,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::NoSuchIdeal { .. } | CliError::BadList(_) => EXIT_PRECONDITION,
            CliError::Write { .. } => EXIT_OTHER,
            CliError::VerifyFailed { code } => *code,
        }
    }
}
