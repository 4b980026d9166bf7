use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The input tree has a vertex of outdegree one.
    #[error("tree is not topological: a vertex has exactly one child")]
    NotTopological,
    /// A configured work bound would be exceeded.
    #[error("resource limit exceeded: {what} exceeds the cap of {cap}")]
    ResourceLimit { what: String, cap: u64 },
    /// A documented precondition does not hold for the input.
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    /// Adaptive precision reached its ceiling without a certified answer.
    #[error("precision exhausted at {bits} bits: {detail}")]
    PrecisionExhausted { bits: u32, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
