use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pabraid_cli::{execute, Cli, CliError};

fn run(cli: &Cli) -> Result<bool, CliError> {
    let execution = execute(cli)?;
    std::io::stdout().write_all(&execution.stdout).map_err(|e| CliError::io("stdout", e))?;
    execution.write_files()?;
    if execution.diagnostics.is_empty() {
        return Ok(true);
    }
    eprintln!("{}", execution.diagnostics_json()?);
    Ok(false)
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own usage errors
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::NotConverged(diagnostics)) => {
            let json = serde_json::json!({ "not_converged": diagnostics });
            eprintln!("{}", serde_json::to_string_pretty(&json).unwrap_or_default());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
