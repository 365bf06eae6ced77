use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree sum {0} is odd; half-edges cannot be paired")]
    OddDegreeSum(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("no connected sample after {attempts} attempts")]
    ConnectivityExhausted { attempts: usize },

    #[error("graph is empty after erasing self-loops and merging parallel edges")]
    EmptyAfterErasure,

    #[error("capacity count {got} does not match edge count {expected}")]
    CapacityMismatch { expected: usize, got: usize },

    #[error("formula undefined: {0}")]
    Undefined(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
