use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the mathematical domain, e.g. `|m| > l` or `|x| >= 1`.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent use of the API, e.g. mismatched truncations or an undersampled grid.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
