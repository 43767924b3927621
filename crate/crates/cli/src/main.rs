//! `mbqc`: run measurement patterns, extract their operators, verify ZX
//! diagrams and produce the sweep tables.

mod args;
mod error;
mod output;
mod pattern_cmd;
mod sweep;
mod zx_cmd;

use args::{Cli, Command, PatternCmd, SweepCmd, ZxCmd};
use clap::Parser;
use error::CliError;
use std::process::ExitCode;

/// What a successful command reports back to the shell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// A verification ran and came out false.
    False,
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    match cli.command {
        Command::Pattern { command: PatternCmd::Run(a) } => pattern_cmd::run(&a),
        Command::Pattern { command: PatternCmd::Extract(a) } => pattern_cmd::extract(&a),
        Command::Sweep { command } => match command {
            SweepCmd::Sop(a) => sweep::sop(&a),
            SweepCmd::Ite(a) => sweep::ite(&a),
            SweepCmd::Feedback(a) => sweep::feedback(&a),
            SweepCmd::Estimator(a) => sweep::estimator(&a),
        },
        Command::Zx { command: ZxCmd::Check(a) } => zx_cmd::check(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
