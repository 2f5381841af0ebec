//! `pitgf`: compute and cross-check generating functions of plane partitions with a pit.
//!
//! Exit codes: 0 on success, 1 when two computations disagree, 2 on invalid input.

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Options, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("pitgf: cannot start {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let opts = Options { format: cli.format, timing: cli.timing };
    let outcome = match &cli.command {
        Command::Chi(a) => commands::chi(a, &opts),
        Command::Crosscheck(a) => commands::crosscheck(a, &opts),
        Command::BrionCheck(a) => commands::brion(a, &opts),
    };
    match outcome {
        Outcome::Agree(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Outcome::Diverge(text) => {
            println!("{}", text.trim_end());
            ExitCode::from(1)
        }
        Outcome::Usage(message) => {
            eprintln!("pitgf: {message}");
            ExitCode::from(2)
        }
    }
}
