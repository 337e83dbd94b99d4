use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A shape violates its invariants (p or q zero, symmetric q = 1, ...).
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// A cell, diagonal coordinate or other index falls outside the index
    /// set of the shape it is used with.
    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// Two objects that must share a shape (or group / row mode) do not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A domain precondition other than an index range failed.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration or collection guard was exceeded. The message names
    /// the bound so callers can report it.
    #[error("capacity guard exceeded: {0}")]
    Capacity(String),

    /// Malformed textual input (DIMACS, JSON payloads decoded by hand).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for guard refusals, which the CLI maps to a dedicated exit code.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}
