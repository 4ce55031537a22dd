use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Model(#[from] predprey::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    /// A trajectory broke an invariant (or diverged) under `--strict`.
    Violation = 1,
    /// Bad arguments, bad config, unreadable or unwritable files, or a run
    /// that could not produce its output.
    Failure = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}
