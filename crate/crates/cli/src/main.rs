//! Command-line front end: exact power index computation, exhaustive game
//! enumeration, inverse-problem solving, and limit diagnostics, with
//! reproducible file-based runs.
//!
//! Exit codes: 0 success, 2 parse error, 3 unsupported combination,
//! 4 counterexample found by a verification scan.

mod commands;
mod manifest;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "votepower", version, about = "Exact-arithmetic toolkit for binary voting rules")]
struct Cli {
    /// Worker threads for parallel folds (0 = automatic). Results do not
    /// depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a power index of a game.
    Power(commands::power::PowerArgs),
    /// Count or stream games of a class.
    Enumerate(commands::enumerate::EnumerateArgs),
    /// Solve the inverse power index problem for a target distribution.
    Inverse(commands::inverse::InverseArgs),
    /// Limit diagnostics along chains of growing games.
    #[command(subcommand)]
    Limits(commands::limits::LimitsCommand),
    /// Numeric probes of the open claims (C1, C3, C5, C7, C8, C9, C10).
    Verify(commands::verify::VerifyArgs),
}

/// Process-level outcome mapped to the documented exit codes.
pub enum Outcome {
    Ok,
    Counterexample,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Unsupported(String),
    Other(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Other(e.into())
    }
}

pub type CliResult = Result<Outcome, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let invocation = std::env::args().collect::<Vec<_>>().join(" ");
    let result = match cli.command {
        Command::Power(args) => commands::power::run(&args, &invocation),
        Command::Enumerate(args) => commands::enumerate::run(&args, &invocation),
        Command::Inverse(args) => commands::inverse::run(&args, &invocation),
        Command::Limits(args) => commands::limits::run(&args, &invocation),
        Command::Verify(args) => commands::verify::run(&args, &invocation),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(4),
        Err(CliError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Unsupported(msg)) => {
            eprintln!("unsupported: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
