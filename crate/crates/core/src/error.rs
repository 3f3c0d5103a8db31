use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable rosters differ: {left:?} vs {right:?}")]
    RosterMismatch { left: Vec<String>, right: Vec<String> },

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("falsified: {0}")]
    Falsified(String),

    #[error("resource limit exceeded: {0}")]
    Timeout(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// True for errors that mean a mathematical claim failed to check, as
    /// opposed to bad input or resource exhaustion.
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified(_))
    }
}
