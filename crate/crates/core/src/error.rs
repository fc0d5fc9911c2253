use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a structural requirement.
    #[error("validation failed: {0}")]
    Validation(String),
    /// A computed identity that should hold does not.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistent(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
