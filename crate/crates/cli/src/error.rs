use std::path::Path;

use spectral_perturb::Error;

pub const EXIT_OK: u8 = 0;
/// I/O, parse or numerical failure; also a failed `verify` run.
pub const EXIT_ERROR: u8 = 1;
/// A theorem or input precondition does not hold.
pub const EXIT_PRECONDITION: u8 = 2;
/// A bound was violated: a library bug, reported with the offending instance.
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {reason}")]
    Parse { path: String, reason: String },
    #[error("{context}: {source}")]
    Core { context: String, source: Error },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn parse(path: &Path, reason: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.display().to_string(),
            reason: reason.into(),
        }
    }

    pub fn core(context: impl Into<String>, source: Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_ERROR,
            CliError::Core { source, .. } => core_exit_code(source),
        }
    }
}

pub fn core_exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundViolation(_) | Error::Counterexample { .. } => EXIT_VIOLATION,
        Error::Trial { source, .. } => core_exit_code(source),
        Error::NonConvergence { .. } | Error::NonFinite { .. } => EXIT_ERROR,
        _ => EXIT_PRECONDITION,
    }
}
