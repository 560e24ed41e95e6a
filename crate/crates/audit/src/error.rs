use std::path::PathBuf;

use transaudit_core::metrics::SpecError;
use transaudit_core::report::FingerprintMismatch;

#[derive(Debug, thiserror::Error)]
pub enum AuditError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: input is not valid UTF-8", path.display())]
    Encoding { path: PathBuf, line: usize },
    #[error("{}: {source}", path.display())]
    Symbols {
        path: PathBuf,
        #[source]
        source: SpecError,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Diff(#[from] FingerprintMismatch),
    #[error("{0}")]
    Strict(String),
}

impl AuditError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Strict(_) => 3,
            _ => 2,
        }
    }

    /// Stable tag printed as `error[TAG]: ...`.
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Usage(_) => "E_USAGE",
            Self::Io { .. } => "E_IO",
            Self::Encoding { .. } => "E_ENCODING",
            Self::Symbols { .. } => "E_SYMBOLS",
            Self::Json { .. } => "E_JSON",
            Self::Diff(_) => "E_DIFF",
            Self::Strict(_) => "E_STRICT",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
