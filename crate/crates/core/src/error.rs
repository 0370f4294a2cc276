use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("braid word has a negative letter at position {0}")]
    NotPositiveBraid(usize),

    #[error("closure has {0} components, a knot is required")]
    NotAKnot(usize),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("move not applicable at position {pos}: {reason}")]
    Move { pos: usize, reason: String },

    #[error("trace rejected at step {step}: {reason}")]
    Trace { step: usize, reason: String },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),

    #[error("witness rejected at step {step}: {reason} (word: {state})")]
    Witness {
        step: usize,
        reason: String,
        state: String,
    },

    #[error("certificate rejected at node {node}: {reason}")]
    Cert { node: usize, reason: String },

    #[error("certificate generation failed: {reason} ({nodes} nodes built)")]
    CertGen { reason: String, nodes: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInvariantViolation(msg.into())
    }
}
