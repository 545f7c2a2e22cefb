use std::path::PathBuf;

use pabraid::cone::ConeError;
use pabraid::foliation::FoliationError;
use pabraid::monotonic::ProgramError;
use pabraid::three_braid::PaWordError;
use pabraid::{BraidError, EntropyError, FamilyError, SpinError};

use crate::report::Diagnostic;

/// Everything a command can fail with.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments that clap could not catch.
    #[error("{0}")]
    Usage(String),
    /// Some estimates did not converge; the rendered output is still
    /// emitted before the process exits.
    #[error("{} estimate(s) did not converge", .0.len())]
    NotConverged(Vec<Diagnostic>),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    PaWord(#[from] PaWordError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Spin(#[from] SpinError),
}

impl CliError {
    /// Process exit code: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Braid(BraidError::Parse(_)) => 2,
            CliError::Program(ProgramError::Parse(_)) => 2,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
