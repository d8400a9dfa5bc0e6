use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input where a nonzero value is required: {0}")]
    ZeroInput(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("singular model: {0}")]
    Singular(String),

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("curve shape not supported here: {0}")]
    WrongShape(String),

    #[error("value is not integral: {0}")]
    NotIntegral(String),

    #[error("{0}")]
    NonSquareDenominator(String),

    #[error("search budget exhausted after {0} candidates")]
    BudgetExhausted(usize),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
