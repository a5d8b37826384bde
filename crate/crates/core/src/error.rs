use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("instance has {size} arguments, exhaustive search is limited to {limit}")]
    Capacity { size: usize, limit: usize },
    #[error("bag of size {0} exceeds the supported maximum")]
    BagTooLarge(usize),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("computation interrupted")]
    Interrupted,
}
