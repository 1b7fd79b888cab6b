use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown activity type {code:?} at row {row}")]
    UnknownActivityType { code: String, row: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown project {0:?}")]
    UnknownProject(String),

    #[error("project {0:?} has zero total funding")]
    DegenerateFunding(String),

    #[error("data integrity: {0}")]
    DataIntegrity(String),

    #[error("degenerate scores: marginals sum to zero")]
    DegenerateScores,
}

impl Error {
    /// Stable, greppable identifier for the error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "E_INVALID_ARGUMENT",
            Error::UnknownActivityType { .. } => "E_UNKNOWN_ACTIVITY_TYPE",
            Error::Schema(_) => "E_SCHEMA",
            Error::Parse { .. } => "E_PARSE",
            Error::Io { .. } => "E_IO",
            Error::UnknownProject(_) => "E_UNKNOWN_PROJECT",
            Error::DegenerateFunding(_) => "E_DEGENERATE_FUNDING",
            Error::DataIntegrity(_) => "E_DATA_INTEGRITY",
            Error::DegenerateScores => "E_DEGENERATE_SCORES",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
