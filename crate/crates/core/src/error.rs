use thiserror::Error;

/// Everything that can go wrong in a computation.
///
/// Domain errors are caller mistakes (out-of-range genus, malformed input).
/// `Inexact` and `Internal` mean an identity that should hold exactly did not.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("inexact division: {0}")]
    Inexact(String),

    #[error("invalid data: {0}")]
    Data(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
