use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid class parameters: {0}")]
    InvalidParams(String),

    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),

    #[error("series budget exceeded: {terms} terms summed, tail bound {tail:e} above tolerance {tolerance:e}")]
    BudgetExceeded {
        terms: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("expected a unit-modulus complex number, got modulus {0}")]
    NotUnitModulus(f64),

    #[error("invalid convex weights: {0}")]
    NotConvexWeights(String),

    #[error("no sign change found for {which} below r_cap (alpha={alpha}, M={m})")]
    BracketFailure {
        which: &'static str,
        alpha: f64,
        m: f64,
    },

    #[error("invalid series configuration: {0}")]
    InvalidConfig(String),

    #[error("coefficient file, line {line}: {message}")]
    CoeffFormat { line: u64, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
