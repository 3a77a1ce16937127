//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors raised by tree construction, exact computations and audits.
#[derive(Debug, Clone, Error)]
pub enum PercError {
    /// A parameter is outside its mathematical domain. The message names the
    /// violated threshold so callers can report it verbatim.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid input (bad tree spec, bad cutset, foreign vertex).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An input exceeds a configured resource cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Conditioning on an event of nonpositive probability.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// The operation is not defined for this input kind.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, PercError>;
