use thiserror::Error;

/// Errors raised by the engine. Paper-level disagreements are never errors;
/// they surface as findings in the verification report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation caps differ: ({0}, {1}) vs ({2}, {3})")]
    CapMismatch(usize, usize, usize, usize),

    #[error("series has a non-invertible constant term")]
    NotInvertible,

    #[error("x-order bound is not strictly increasing at index {index}: {previous} then {current}")]
    NonIncreasingBound {
        index: usize,
        previous: usize,
        current: usize,
    },

    #[error("summand {index} has x-order {actual}, below its claimed bound {claimed}")]
    BoundViolated {
        index: usize,
        claimed: usize,
        actual: usize,
    },

    #[error("series is not divisible by x^{0} y^{1}")]
    NotDivisible(usize, usize),

    #[error("invalid height word: {0}")]
    InvalidBargraph(String),

    #[error("invalid restricted growth string: {0}")]
    InvalidWord(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
