#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::run::CliError;

/// Environment variable overriding the worker-thread count.
const THREADS_VAR: &str = "FRACWAVE_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        CliError::Invalid(format!(
            "invalid {THREADS_VAR}: '{raw}' is not a positive integer"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Invalid(format!("invalid {THREADS_VAR}: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = configure_threads().and_then(|_| run::run(cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
