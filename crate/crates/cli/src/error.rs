use rank2sep_core::Error;
use thiserror::Error;

/// Everything that ends a command early, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid state: {0}")]
    Invariant(Error),
    #[error("{0}")]
    NotRankTwo(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotRankTwo { .. } => CliError::NotRankTwo(e),
            Error::InvalidShape { .. }
            | Error::ShapeMismatch { .. }
            | Error::LengthMismatch { .. }
            | Error::InvalidBipartition(_)
            | Error::InvalidTolerance { .. } => CliError::Parse(e.to_string()),
            other => CliError::Invariant(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_)
            | CliError::Usage(_)
            | CliError::Read { .. }
            | CliError::Write { .. } => 2,
            CliError::Invariant(_) => 3,
            CliError::NotRankTwo(_) => 4,
        }
    }
}
