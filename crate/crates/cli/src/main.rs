mod args;
mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use frac_core::FracError;
use serde_json::json;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] FracError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(FracError::UnknownFunction(_) | FracError::InvalidParams { .. } | FracError::Domain(_)) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FRAC_KIT_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("FRAC_KIT_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

/// Output text and whether every check in it passed.
fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    init_threads()?;
    match &cli.command {
        Command::Eval(a) => commands::eval(a).map(|s| (s, true)),
        Command::Identity(a) => commands::identity(a),
        Command::Constants(a) => commands::constants(a).map(|s| (s, true)),
        Command::Extension(a) => commands::extension(a).map(|s| (s, true)),
        Command::Harnack(a) => commands::harnack(a).map(|s| (s, true)),
        Command::Suite(a) => commands::suite(a),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, passed)) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(text.as_bytes());
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let kind = match &e {
                CliError::Usage(_) => "usage".to_string(),
                CliError::Numeric(inner) => format!("{inner:?}").split(['(', ' ', '{']).next().unwrap_or("").to_string(),
            };
            let diag = json!({ "error": kind, "message": e.to_string(), "exit_code": e.exit_code() });
            eprintln!("{}", output::to_json(&diag));
            ExitCode::from(e.exit_code())
        }
    }
}
