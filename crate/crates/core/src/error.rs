use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate sample point: abscissa {0}")]
    DuplicateSample(i64),

    #[error("interpolation needs at least one sample point")]
    NoSamples,

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("exp requires zero constant term")]
    NonzeroConstantTerm,

    #[error("exp requires rational (constant) coefficients, found a polynomial at x^{0}")]
    NonConstantCoefficient(usize),

    #[error("invalid figure: {0}")]
    InvalidFigure(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("configurations finite only for connected graphs")]
    Disconnected,

    #[error("invalid overlap graph: {0}")]
    InvalidGraph(String),

    #[error("{what} = {actual} exceeds the guard of {limit} (pass --allow-large to override)")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("brute force needs {iterations} iterations, above the budget of {budget}; {hint}")]
    BudgetExceeded {
        iterations: u128,
        budget: u128,
        hint: String,
    },

    #[error("lift not unique: subset size {k} must be smaller than the side length {n}")]
    LiftNotUnique { k: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::GuardExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::LiftNotUnique { .. }
        )
    }
}
