//! `cohprobe` command-line front end.

mod cli;
mod config;
mod error;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

use crate::error::{CliError, Result};

/// Caps the worker pool when `COHPROBE_THREADS` is set.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("COHPROBE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("COHPROBE_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let args = match config::inject(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let cli = cli::Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    match configure_threads().and_then(|()| run::run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
