//! Command-line front end: argument parsing, file formats and the mapping
//! from outcomes to exit codes.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

mod args;
mod commands;
pub mod document;

pub use args::Cli;

/// Everything worked and every check passed.
pub const EXIT_OK: i32 = 0;
/// A protocol ran but a check failed (disagreement, rejected signature, weak key).
pub const EXIT_FAILED: i32 = 1;
/// Bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;
/// A division that should have been exact was not, or decoded data was corrupt.
pub const EXIT_CORRUPT: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(ore_kex::Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<ore_kex::Error> for CliError {
    fn from(e: ore_kex::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ore_kex::Error as E;
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Core(E::NotDivisible | E::Encoding(_)) => EXIT_CORRUPT,
            CliError::Core(
                E::Parse(_)
                | E::InvalidRing(_)
                | E::RingMismatch
                | E::NotPrime(_)
                | E::InvalidModulus(_)
                | E::VariableOutOfRange { .. }
                | E::ImpossibleShape { .. }
                | E::InvalidConstantPolynomial(_),
            ) => EXIT_USAGE,
            CliError::Core(_) => EXIT_FAILED,
        }
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match commands::execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
