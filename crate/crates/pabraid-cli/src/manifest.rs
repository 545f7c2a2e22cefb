//! Run manifests: enough to rerun a command and check that its outputs are
//! byte-identical.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::Cli;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDigest {
    /// `stdout` or the path written.
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

impl OutputDigest {
    pub fn of(name: impl Into<String>, data: &[u8]) -> Self {
        Self { name: name.into(), bytes: data.len(), sha256: hex::encode(Sha256::digest(data)) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Subcommand path, e.g. `family` or `reproduce z-limit`.
    pub command: String,
    /// Parsed arguments.
    pub arguments: serde_json::Value,
    /// Seed standard form or curve, when the command uses one.
    pub seed: Option<String>,
    pub tolerance: Tolerance,
    pub outputs: Vec<OutputDigest>,
}

impl RunManifest {
    pub fn new(cli: &Cli, command: String, seed: Option<String>) -> Result<Self, serde_json::Error> {
        Ok(Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            arguments: serde_json::to_value(cli)?,
            seed,
            tolerance: Tolerance { tol: cli.tol, max_iter: cli.max_iter },
            outputs: Vec::new(),
        })
    }
}
