use hha::HhaError;
use thiserror::Error;

/// Errors that abort a command. All of them map to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] HhaError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}
