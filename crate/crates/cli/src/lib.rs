//! Command-line front end: load matrices, compute bound reports, reproduce the sharpness
//! examples, run campaigns and property suites, and emit JSON or CSV.
//!
//! Exit codes: 0 success, 1 I/O / parse / numerical error or failed verification,
//! 2 precondition failure, 3 bound violation.

pub mod args;
pub mod commands;
pub mod error;
pub mod matrix_io;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use error::{CliError, EXIT_ERROR, EXIT_OK, EXIT_PRECONDITION, EXIT_VIOLATION};
pub use report::{
    Invocation, Record, ReportDocument, ReportFormat, Status, Summary, SCHEMA, SCHEMA_VERSION,
};

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            return EXIT_ERROR;
        }
    };
    let result = match &cli.command {
        args::Command::Bound(a) => commands::cmd_bound(a, stdout, stderr),
        args::Command::Sharpness(a) => commands::cmd_sharpness(a, stdout),
        args::Command::Montecarlo(a) => commands::cmd_montecarlo(a, stdout, stderr),
        args::Command::Verify(a) => commands::cmd_verify(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
