mod commands;
mod config;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::config::{Cli, CliError, CliResult, Command, RunConfig};

const THREADS_VAR: &str = "MINUSCULE_THREADS";

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_VAR} must be a positive integer, got '{value}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("{THREADS_VAR}: {e}")))
}

fn run(cli: Cli) -> CliResult<bool> {
    configure_threads()?;
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = RunConfig::from_cli(&cli).over(file);
    let out = match cli.command {
        Command::Enumerate { .. } => commands::enumerate(&cfg)?,
        Command::Quiver { .. } => commands::quiver(&cfg)?,
        Command::Decompose { .. } => commands::decompose(&cfg)?,
        Command::Verify { .. } => commands::verify(&cfg)?,
        Command::Catalog { .. } => commands::catalog(&cfg)?,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, &out.body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(out.body.as_bytes());
        }
    }
    Ok(out.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
