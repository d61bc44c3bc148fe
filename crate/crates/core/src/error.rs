use thiserror::Error;

use crate::coinvariants::GradedReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error(
        "enumeration budget exceeded: {needed} candidates > budget {budget}; \
         use the subset model or a closed formula instead, or raise --budget"
    )]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("not polynomial on this grid")]
    NotPolynomial,

    #[error("grid too small: variable `{variable}` has {points} points, need at least {needed}")]
    GridTooSmall {
        variable: String,
        points: usize,
        needed: usize,
    },

    /// An exact identity that must hold failed: non-exact division,
    /// non-integral character average and the like.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("coinvariant computation did not converge below degree cap {cap}")]
    NonConvergence { cap: u32, partial: Box<GradedReport> },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}
