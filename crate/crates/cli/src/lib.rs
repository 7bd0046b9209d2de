//! Command-line front end: argument parsing, subcommands and JSON reports.

pub mod args;
pub mod commands;
pub mod report;

use parafree_core::error::ParseError;
use thiserror::Error;

pub use commands::{run, Outcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("`{0}` is neither a readable file nor a bundled example (see `parafree example --list`)")]
    UnknownInput(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("{source_name}: {error}")]
    Parse { source_name: String, error: ParseError },
    #[error(transparent)]
    Core(#[from] parafree_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn parse(source_name: &str, error: ParseError) -> Self {
        CliError::Parse { source_name: source_name.to_string(), error }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(parafree_core::Error::CapExceeded { .. }) => commands::EXIT_CAP,
            _ => commands::EXIT_USAGE,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Core(e.into())
    }
}
