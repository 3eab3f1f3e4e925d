//! Command-line front end: argument planning, execution and output schemas.

pub mod exec;
pub mod plan;
pub mod schema;

pub use exec::{execute, render};
pub use plan::{parse_and_plan, CommandPlan, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

/// A failure with the exit status it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    /// Help and version output count as success.
    pub(crate) fn from_clap(e: clap::Error) -> Self {
        use clap::error::ErrorKind;
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.render().to_string(),
        }
    }
}

impl From<spexlab::Error> for CliError {
    fn from(e: spexlab::Error) -> Self {
        use spexlab::Error::*;
        let code = match e {
            Parameter(_) | Graph6 { .. } | Range(_) => EXIT_USAGE,
            Convergence { .. } => EXIT_CONVERGENCE,
            Internal(_) => EXIT_IO,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}
