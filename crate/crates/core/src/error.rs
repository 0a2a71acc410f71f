use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A symbol or state id outside the automaton's range.
    #[error("input error: {0}")]
    Input(String),

    /// A precondition on the arguments of an operation does not hold.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The request exceeds what exhaustive construction supports.
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, limit: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            limit,
        }
    }
}
