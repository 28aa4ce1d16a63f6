use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("resource limit exceeded: {what} is {actual}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        actual: u128,
        cap: u128,
    },

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("generator {generator} is not an automorphism: edge {{{u}, {v}}} maps to non-edge {{{iu}, {iv}}}")]
    NotAutomorphism {
        generator: usize,
        u: usize,
        v: usize,
        iu: usize,
        iv: usize,
    },

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
