//! Error type shared by all engines in the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text could not be parsed; `pos` is a byte offset into the input.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A variable name was used that the ambient ring does not declare.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// Two operands live in different ambient rings.
    #[error("ambient ring mismatch: {0}")]
    AmbientMismatch(String),

    /// An operation precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A Buchberger resource cap was exceeded. Never a wrong answer:
    /// the computation is abandoned, not truncated.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// A monomial exponent left the supported range.
    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    /// The requested operation does not support this ambient ring.
    #[error("unsupported ambient: {0}")]
    UnsupportedAmbient(String),

    /// The requested operation does not support this dimension.
    #[error("unsupported dimension {dim}: {msg}")]
    UnsupportedDimension { dim: usize, msg: String },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
