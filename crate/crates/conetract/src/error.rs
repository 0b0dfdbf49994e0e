use thiserror::Error;

/// Failure modes shared by every module in the crate.
///
/// The CLI maps the variants onto process exit codes: `Input` is 1,
/// `Budget` is 2 and `Resource` is 3.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: dimension mismatch, empty set, invalid exponent, ...
    #[error("input error: {0}")]
    Input(String),
    /// A configured search budget ran out before a verdict was reached.
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// An internal guard tripped before exhausting memory or time.
    #[error("resource guard: {0}")]
    Resource(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Budget(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
