use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {0} appears more than once")]
    DuplicateIndex(String),
    #[error("index {index} outside 1..={bound}")]
    IndexOutOfRange { index: String, bound: String },
    #[error("truncation must be positive")]
    ZeroTruncation,
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("constant term vanishes; logarithm undefined")]
    VanishingConstantTerm,
    #[error("not enough torus phases: need {needed}, have {have}")]
    InsufficientPhases { needed: usize, have: usize },
    #[error("symbol recovery failed: {0}")]
    Recovery(String),
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
