use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Enumeration would exceed the configured element cap.
    #[error("order cap exceeded: more than {cap} elements")]
    CapExceeded { cap: usize },

    #[error("element does not belong to this group")]
    ContextMismatch,

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
