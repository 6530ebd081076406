use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A size limit was exceeded.
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// The arguments are well formed but outside the operation's domain
    /// (loops, coloops, non-free elements, empty basis classes).
    #[error("{0}")]
    Domain(String),

    /// A certificate identity or signature condition failed. The theorems guarantee
    /// these, so this always indicates a bug.
    #[error("certificate check failed: {0}")]
    Certificate(String),

    /// A built-in construction failed its self-check.
    #[error("construction self-check failed: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
