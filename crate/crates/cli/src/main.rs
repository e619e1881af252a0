//! `saxlab` command-line tool. Run `saxlab --help` for commands and exit
//! codes.

mod args;
mod commands;
mod failure;
mod output;
mod ranges;
mod synth;

use std::process::ExitCode;

use clap::Parser;

use failure::{CliResult, Failure};

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("SAXLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("SAXLAB_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match configure_threads().and_then(|_| commands::run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("saxlab: {f}");
            ExitCode::from(f.code)
        }
    }
}
