mod args;
mod cmd;
mod config;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status of a command that ran to completion.
pub enum Failure {
    /// A mathematical check failed: exit 1.
    Falsified(String),
    /// Bad parameters or unreadable inputs: exit 2.
    Usage(String),
}

pub type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let argv = match config::expand_args(std::env::args().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = match &cli.command {
        Command::Gen(a) => cmd::gen(a, &mut out),
        Command::Rank(a) => cmd::rank(a, &mut out),
        Command::Invariants(a) => cmd::invariants(a, &mut out),
        Command::Certify(a) => cmd::certify(a, &mut out),
        Command::Laurent(a) => cmd::laurent(a, &mut out),
        Command::Experiment(a) => cmd::experiment(a, &mut out),
        Command::Decimate(a) => cmd::decimate(a, &mut out),
    };
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified(m)) => {
            eprintln!("falsified: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
