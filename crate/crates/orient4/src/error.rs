use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller broke an operation's precondition (mismatched ground sets,
    /// out-of-range counts, wrong role pairs).
    #[error("usage error: {0}")]
    Usage(String),

    /// The tree specification violates a model invariant.
    #[error("invalid tree: {0}")]
    InvalidSpec(String),

    /// Input text could not be parsed.
    #[error("malformed input: {0}")]
    Parse(String),

    /// A request that is well formed but declined: the instance is in C1,
    /// lies in the open case, or exceeds a budget.
    #[error("refused: {0}")]
    Refused(String),

    /// The short-cycle hypothesis of the extension lemma does not hold.
    #[error("extension lemma inapplicable: {0}")]
    ExtensionInapplicable(String),

    /// An internal consistency check failed. This always signals a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
