//! Command-line front end: JSON input and output, the catalog, and verification suites.

pub mod args;
mod commands;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

pub use commands::Outcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Runs one command line, writing JSON to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let pretty = cli.global.pretty;
    let emit = |out: &mut dyn Write, v: &Value| {
        let text = if pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        }
        .expect("values serialize");
        let _ = writeln!(out, "{text}");
    };
    match commands::execute(&cli) {
        Ok(Outcome::Done(v)) => {
            emit(out, &v);
            EXIT_OK
        }
        Ok(Outcome::Failed(v)) => {
            emit(out, &v);
            EXIT_FAILED
        }
        Err(commands::CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(commands::CliError::Compute(e)) => {
            emit(out, &json!({ "error": e.to_string() }));
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
