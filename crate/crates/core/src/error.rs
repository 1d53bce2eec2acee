use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad permutation, subgroup not normal, ...).
    #[error("input error: {0}")]
    Input(String),
    /// The requested operation is not available for this formation.
    #[error("capability error: {0}")]
    Capability(String),
    /// A desk-scale cap was exceeded.
    #[error("resource error: {0}")]
    Resource(String),
    /// A self-check failed; indicates a bug or a function that is not a chief factor function.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Capability(_) => 3,
            Error::Resource(_) => 4,
            Error::Internal(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
