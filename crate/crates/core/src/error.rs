use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid base {0}: base must be at least 2")]
    InvalidBase(u32),

    #[error("invalid pattern spec: {0}")]
    InvalidSpec(String),

    #[error("polynomial evaluates to a negative value at n = {n}")]
    NegativeValue { n: String },

    #[error("subtraction underflow: {0}")]
    Underflow(String),

    #[error("length {got} out of range (expected {expected})")]
    OutOfRange { got: usize, expected: String },

    #[error("measure requires a binary sequence, got alphabet size {0}")]
    NonBinary(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("certificate refused: {0}")]
    CertificateRefused(String),

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn out_of_range(got: usize, expected: impl Into<String>) -> Self {
        Error::OutOfRange {
            got,
            expected: expected.into(),
        }
    }
}
