use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {what} requires {required}, cap is {cap}")]
    Capacity {
        what: &'static str,
        required: String,
        cap: u64,
    },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("s = {s} exceeds the separability threshold {bound}")]
    ThresholdExceeded { s: String, bound: String },

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("validation failed ({invariant}){}: {detail}", term.map(|t| format!(" at term {t}")).unwrap_or_default())]
    Validation {
        invariant: &'static str,
        term: Option<usize>,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
