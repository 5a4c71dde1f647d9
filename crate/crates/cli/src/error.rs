use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flag values or combinations. Exit status 1.
    #[error("{0}")]
    Usage(String),
    /// Malformed or inconsistent input files. Exit status 2.
    #[error("{0}")]
    Data(String),
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: hotgraph_core::Error,
    },
    #[error(transparent)]
    Core(#[from] hotgraph_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(hotgraph_core::Error::Config(_)) => 1,
            _ => 2,
        }
    }

    pub fn in_file(path: impl Into<PathBuf>) -> impl FnOnce(hotgraph_core::Error) -> CliError {
        let path = path.into();
        move |source| CliError::File { path, source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
