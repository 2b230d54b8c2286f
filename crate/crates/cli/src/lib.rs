//! Command-line front end for `rankmetric`: code files, reports and the
//! theorem-verification runner.

pub mod codefile;
pub mod commands;
pub mod fixtures;
pub mod grid;
pub mod report;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Lib(#[from] rankmetric::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}
