use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "characteristic polynomial {poly} does not split over the rationals; \
         all arithmetic is exact over the rationals, so only matrices with rational \
         eigenvalues are supported (a --declared structure may replace root finding, \
         but its eigenvalues must be rational too)"
    )]
    IrrationalSpectrum { poly: String },

    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(Rational),

    #[error("invalid partition {0:?}: parts must be positive and non-increasing")]
    InvalidPartition(Vec<usize>),

    #[error("invalid eigen-structure: {0}")]
    InvalidStructure(String),

    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An exactly-checked postcondition failed; indicates a bug, never bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
