use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Format(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] dressian_core::Error),
}

impl Error {
    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    /// 2 for malformed input, 1 for everything that is a mathematical
    /// failure on well-formed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Format(_) | Error::Json(_) => 2,
            Error::Core(dressian_core::Error::Parameter(_)) => 2,
            Error::Core(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
