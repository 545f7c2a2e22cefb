//! Command-line driver for `pabraid`: argument parsing, report types, CSV
//! tables and run manifests. The binary is a thin wrapper over [`execute`].

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod range;
pub mod report;
pub mod table;

use std::path::{Path, PathBuf};

pub use args::Cli;
pub use error::CliError;
pub use manifest::RunManifest;
pub use report::Diagnostic;

use args::{Command, ReproduceCommand};
use manifest::OutputDigest;

/// Everything a run produces. Nothing is written until [`Execution::write_files`].
pub struct Execution {
    pub stdout: Vec<u8>,
    /// Files to write, in order.
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub diagnostics: Vec<Diagnostic>,
    pub manifest: RunManifest,
}

impl Execution {
    pub fn write_files(&self) -> Result<(), CliError> {
        for (path, data) in &self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            }
            std::fs::write(path, data).map_err(|e| CliError::io(path, e))?;
        }
        Ok(())
    }

    /// JSON diagnostics for non-converged estimates.
    pub fn diagnostics_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(&serde_json::json!({ "not_converged": self.diagnostics }))?)
    }
}

fn command_name(command: &Command) -> String {
    match command {
        Command::Braid(c) => format!("braid {}", variant_name(c)),
        Command::Family(a) => format!("family {}", a.name),
        Command::Cone(c) => format!("cone {}", variant_name(c)),
        Command::Prongs(_) => "prongs".into(),
        Command::Tribraid(_) => "tribraid".into(),
        Command::Entropy(_) => "entropy".into(),
        Command::Spin(c) => format!("spin {}", variant_name(c)),
        Command::Reproduce(ReproduceCommand::ZLimit(_)) => "reproduce z-limit".into(),
        Command::Reproduce(ReproduceCommand::BetaLimit(_)) => "reproduce beta-limit".into(),
    }
}

fn variant_name(v: &impl serde::Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::Object(m)) => m.keys().next().cloned().unwrap_or_default(),
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn to_json_bytes(value: &serde_json::Value) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Runs a parsed command line without touching the file system.
pub fn execute(cli: &Cli) -> Result<Execution, CliError> {
    let rendered = commands::dispatch(cli)?;
    let stdout = if cli.json { to_json_bytes(&rendered.json)? } else { rendered.text.into_bytes() };

    let mut files = Vec::new();
    if let Some(path) = &cli.csv {
        let table = rendered.table.as_ref().ok_or_else(|| CliError::Usage("this command has no table for --csv".into()))?;
        files.push((path.clone(), table.to_csv()?));
    }
    let out_dir = match &cli.command {
        Command::Reproduce(ReproduceCommand::ZLimit(a) | ReproduceCommand::BetaLimit(a)) => a.out.clone(),
        _ => None,
    };
    let name = command_name(&cli.command);
    let mut manifest = RunManifest::new(cli, name.clone(), rendered.seed.clone())?;
    manifest.outputs.push(OutputDigest::of("stdout", &stdout));

    if let Some(dir) = &out_dir {
        let stem = name.trim_start_matches("reproduce ").replace('-', "_");
        let table = rendered.table.as_ref().expect("reproduce renders a table");
        files.push((dir.join(format!("{stem}.csv")), table.to_csv()?));
        files.push((dir.join(format!("{stem}.json")), to_json_bytes(&rendered.json)?));
    }
    for (path, data) in &files {
        manifest.outputs.push(OutputDigest::of(path.display().to_string(), data));
    }
    let manifest_bytes = to_json_bytes(&serde_json::to_value(&manifest)?)?;
    if let Some(dir) = &out_dir {
        let stem = name.trim_start_matches("reproduce ").replace('-', "_");
        files.push((dir.join(format!("{stem}.manifest.json")), manifest_bytes.clone()));
    }
    if let Some(path) = &cli.manifest {
        files.push((path.clone(), manifest_bytes));
    }
    Ok(Execution { stdout, files, diagnostics: rendered.diagnostics, manifest })
}

/// Reads a manifest written by an earlier run.
pub fn read_manifest(path: &Path) -> Result<RunManifest, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
