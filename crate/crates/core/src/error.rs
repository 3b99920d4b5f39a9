use thiserror::Error;

use crate::degree::MultiDegree;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("coefficient {value} is not representable in {field}")]
    Coefficient { value: String, field: String },

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("entry ({row},{col}) must be zero or homogeneous of degree {expected}, found {found}")]
    EntryDegree {
        row: usize,
        col: usize,
        expected: MultiDegree,
        found: String,
    },

    #[error("grading is not positive; best candidate {candidate:?} fails on {violating:?}")]
    NotPositive {
        candidate: Vec<i64>,
        violating: Vec<String>,
    },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error reports an exhausted budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
