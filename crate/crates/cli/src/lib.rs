//! Command-line front end for `meanlab`: evaluate means and Seiffert
//! functions, run single verifications, and run the full reproduction suite.

pub mod commands;
pub mod pairs;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::Cli;
pub use report::{emit_report, Format, Layout, Record, ReportDocument};

/// Environment variable overriding the default tolerance of single checks.
pub const TOL_ENV: &str = "MEANLAB_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] meanlab::Error),
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const ERROR: i32 = 2;
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the process exit status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let rendered = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    let _ = write!(stdout, "{rendered}");
                    exit::PASS
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    exit::ERROR
                }
            };
        }
    };
    let command_line = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let tol_env = std::env::var(TOL_ENV).ok();
    match cli.execute(&command_line, tol_env.as_deref()) {
        Ok(outcome) => match outcome.write(&cli, stdout) {
            Ok(()) if outcome.doc.all_pass() => exit::PASS,
            Ok(()) => exit::FAIL,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                exit::ERROR
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit::ERROR
        }
    }
}
