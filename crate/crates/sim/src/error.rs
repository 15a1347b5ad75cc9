use std::path::PathBuf;

use extdomain_core::SolverError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
}

impl HarnessError {
    /// Machine-readable category printed on failure.
    pub fn category(&self) -> &'static str {
        match self {
            HarnessError::Solver(e) => e.category(),
            HarnessError::Io { .. } => "io",
            HarnessError::Csv { .. } => "csv",
            HarnessError::Config { .. } => "config",
            HarnessError::Argument(_) => "argument",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Solver(_) => 3,
            HarnessError::Io { .. } | HarnessError::Csv { .. } => 4,
            HarnessError::Config { .. } | HarnessError::Argument(_) => 2,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
