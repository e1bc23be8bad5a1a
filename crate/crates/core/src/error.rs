use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no codewords: the code has k = 0")]
    NoCodewords,

    #[error("trivial homology at level {level}")]
    TrivialHomology { level: usize },

    #[error("instance too large: {what} requires {required}, cap is {cap}")]
    TooLarge {
        what: String,
        required: String,
        cap: String,
    },

    #[error("no nontrivial targets reachable")]
    NoTarget,

    #[error("frontier exhausted after {explored} states without reaching the target; try a larger frontier cap (currently {cap})")]
    FrontierExhausted { explored: usize, cap: usize },

    #[error("factor {factor} is not a codeword of its code")]
    NotACodeword { factor: &'static str },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("unknown suite {name:?}; valid suites: {valid}")]
    UnknownSuite { name: String, valid: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn mismatch(op: &'static str, left: impl ToString, right: impl ToString) -> Error {
    Error::DimensionMismatch {
        op,
        left: left.to_string(),
        right: right.to_string(),
    }
}
