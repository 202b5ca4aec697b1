use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] tlsym_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid document: {0}")]
    Schema(String),
    /// Strict parsing found input that had to be rewritten.
    #[error("non-canonical document: {}", .0.join("; "))]
    NonCanonical(Vec<String>),
    #[error("{0}")]
    Usage(String),
}

impl From<serde_json::Error> for AppError {
    fn from(e: serde_json::Error) -> Self {
        AppError::Schema(e.to_string())
    }
}

pub type Result<T, E = AppError> = std::result::Result<T, E>;
