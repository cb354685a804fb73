//! Command-line front end. Exit codes: 0 on success, 2 for invalid input,
//! 3 when a numerical method fails to converge.

mod args;
mod basic;
mod cache;
mod config;
mod converge;
mod output;
mod rh_cmd;
mod sample;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Format, GridSpec, Mode};
pub use config::ExperimentConfig;
pub use converge::{convergence_row, default_grid, setup, ConvergenceRow, Setup};
pub use output::Report;

use crate::error::Error;
use crate::parallel::with_workers;
use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INVALID
    }
}

fn workers(cmd: &Command) -> Option<usize> {
    match cmd {
        Command::Eqm(a) => a.output.workers,
        Command::Kernel(a) => a.output.workers,
        Command::Oppoly(a) => a.output.workers,
        Command::Converge(a) => a.output.workers,
        Command::Rh(a) => a.output.workers,
        Command::Sample(a) => a.output.workers,
    }
}

fn dispatch(cmd: &Command) -> crate::Result<(ExperimentConfig, Report)> {
    match cmd {
        Command::Eqm(a) => basic::eqm(a),
        Command::Kernel(a) => basic::kernel(a),
        Command::Oppoly(a) => basic::oppoly(a),
        Command::Converge(a) => converge::converge(a),
        Command::Rh(a) => rh_cmd::rh(a),
        Command::Sample(a) => sample::sample(a),
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let result = with_workers(workers(&cli.command), || {
        let (cfg, report) = dispatch(&cli.command)?;
        output::emit(cfg.output.path.as_deref(), &output::render(&cfg, &report))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
