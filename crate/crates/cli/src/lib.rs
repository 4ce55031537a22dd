//! Command-line front end for the `predprey` solvers: scenario files,
//! parallel batch runs, CSV output, gnuplot scripts and verification
//! reports.

pub mod args;
pub mod commands;
pub mod compare;
pub mod config;
pub mod csv;
pub mod error;
pub mod gnuplot;
pub mod presets;
pub mod report;
pub mod scenario;

use std::ffi::OsString;

use clap::Parser;

use crate::args::{Cli, Command};
pub use crate::error::{CliError, Exit};

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Failure } else { Exit::Ok };
        }
    };
    let opts = &cli.opts;
    let result = match &cli.command {
        Command::Simulate => commands::simulate(opts),
        Command::Stability => commands::stability(opts),
        Command::Verify => commands::verify(opts),
        Command::Compare { a, b, against } => commands::compare_cmd(opts, a.as_deref(), b.as_deref(), against),
        Command::Sweep { over, values } => commands::sweep(opts, *over, values),
        Command::Figures { preset } => commands::figures(opts, preset),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        Exit::Failure
    })
}
