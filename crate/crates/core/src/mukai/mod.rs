//! Mukai vectors on K3 surfaces and integral lattices: the K3 lattice, the
//! sublattice of classes pairing to a multiple of `r` with a fixed class,
//! and its overlattice by `alpha / r`.

mod lattice;
mod vector;

use thiserror::Error;

pub use lattice::{
    e8_negative, hermite_normal_form, hyperbolic_plane, k3_lattice, l_zero_sublattice, overlattice,
    IntegralLattice, LatticeFile, LatticeInvariants, OverlatticeSpec,
};
pub use vector::MukaiVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank must be non-negative, got {0}")]
    NegativeRank(i64),
    #[error("self-intersection must be even, got {0}")]
    OddSelfIntersection(i64),
    #[error("Gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("vector has {found} coordinates, lattice has rank {rank}")]
    Dimension { rank: usize, found: usize },
    #[error("class must be nonzero")]
    ZeroClass,
    #[error("divisor r must be at least 2, got {0}")]
    BadDivisor(i64),
    #[error("2 r^2 = {needed} does not divide (alpha^2) = {alpha_sq}")]
    DivisibilityViolation { alpha_sq: String, needed: String },
    #[error("overlattice Gram matrix is not integral")]
    NotIntegral,
    #[error("entry {0} does not fit in a 64-bit integer")]
    Overflow(String),
}
