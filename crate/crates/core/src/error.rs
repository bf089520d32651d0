use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Vector length does not match the quiver's vertex count.
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// Input is outside the supported class (disconnected quiver, loop at a
    /// reflection vertex, wrong quiver type for an operation, ...).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Input violates a documented precondition of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size or window cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
