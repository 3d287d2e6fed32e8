use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by library operations.
///
/// Variants split into contract violations (bad arguments or configuration)
/// and runtime failures (IO, corrupt files), which the CLI maps onto distinct
/// exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inconsistent spintensor pair: max conjugation mismatch {mismatch:e}")]
    InconsistentPair { mismatch: f64 },

    #[error("stability bound violated: {0}")]
    Unstable(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("corrupt snapshot {path}: {reason}")]
    CorruptSnapshot { path: PathBuf, reason: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by invalid input rather than the environment.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io { .. } | Error::CorruptSnapshot { .. })
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
