use thiserror::Error;

/// Errors raised by the geometry, complex and persistence routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point does not lie in the cover space of its surface.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or inconsistent input (duplicate points, broken chains, ...).
    #[error("input error: {0}")]
    Input(String),
    /// The genus-two orbit search hit its configured word-length cap.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Internal consistency check failed.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
