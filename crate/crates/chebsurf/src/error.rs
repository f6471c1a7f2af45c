//! Error type shared by the library and the CLI.

use std::path::PathBuf;

/// Everything that can go wrong inside the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A parameter lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A request exceeds a hard implementation limit.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Reading, decoding or writing a file failed.
    #[error("i/o error on {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    /// A pipeline stage failed; names the stage for diagnosis.
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    /// An internal invariant did not hold; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        Error::Io {
            path: path.into(),
            message: message.to_string(),
        }
    }

    /// Wraps the error with the name of the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit code used by the CLI: 2 argument, 3 i/o, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::Domain(_) | Error::Capacity(_) => 2,
            Error::Io { .. } => 3,
            Error::Stage { source, .. } => source.exit_code(),
            Error::Invariant(_) => 4,
        }
    }
}
