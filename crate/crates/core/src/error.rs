use thiserror::Error;

/// Errors raised by the engine. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidType(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("{what} exceeds cap {cap} (estimated {estimate})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        estimate: u64,
    },
    #[error("embedding has no G-regular element in its torus")]
    NotRegular,
    #[error("cannot realize the subalgebra in the Chevalley model: {0}")]
    LieModel(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
