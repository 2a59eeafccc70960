//! Exact scalar, polynomial and matrix arithmetic shared by every other module.

mod matrix;
mod poly;
mod polymatrix;
mod quartic;
mod scalar;
mod text;
mod univariate;

pub use matrix::Matrix;
pub use poly::{Monomial, MultiPoly};
pub use polymatrix::PolyMatrix;
pub use quartic::{BinaryQuartic, QuarticInvariants};
pub use scalar::{int, parse_rational, rat, reduce, Fp, OddPrime, Rational, Scalar, Q};
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("binary quartic has a repeated root (discriminant 0)")]
    DegenerateQuartic,
    #[error("{0} is not an odd prime below 2^31")]
    NotOddPrime(u64),
    #[error("prime {0} divides a denominator")]
    BadPrime(u32),
    #[error("invalid scalar literal {0:?}")]
    BadScalar(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
