//! The `gtfa` command-line tool.
//!
//! Exit status: 0 success, 1 a required property fails, 2 usage or input
//! error, 3 numerical failure (singular kernel, inconsistent distribution).

use std::ffi::OsString;

use thiserror::Error;

mod args;
mod commands;
mod figures;
pub mod specs;

pub use args::{Cli, Command};
pub use figures::gaussian_window;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gtfa_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use gtfa_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::SingularKernel { .. } | E::MarginNegative { .. }) => 3,
            CliError::Core(_) => 2,
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status. Errors go to standard error.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
