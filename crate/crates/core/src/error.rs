use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special functions, the function model, the operator
/// backends and the expression parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(Complex64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },

    #[error("lower limits differ: {0} vs {1}")]
    Mismatch(String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The quadrature did not reach its tolerance; `estimate` is the last
    /// (highest-degree) value and `error` the last successive difference.
    #[error("no convergence: best estimate {estimate}, achieved relative error {error:e}")]
    Convergence { estimate: Complex64, error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
