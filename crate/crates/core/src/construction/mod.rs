//! Sampling points of the spaces of matrices of linear forms whose
//! determinant (or Pfaffian) lies in a pencil (or net) of quadrics, and
//! checking the relation between their invariants.

mod invariants;
mod linear;
mod sampling;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::quadform::QuadFormError;
use crate::systems::SystemError;

pub use invariants::{
    b_coordinates, covariance_check, group_invariance_check, invariants, random_general_linear,
    random_special_linear, t_invariant, CovarianceReport, GroupAction, InvarianceReport,
    InvariantData,
};
pub use linear::{LinearMatrix, KLEIN_PAIRS};
pub use sampling::{
    covariance_trials, invariance_trials, relation_degree_profile, sample_point, verify_relation,
    DegreeProfile, RelationFailure, RelationReport, SystemPoint, TrialSummary,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("determinant is not in the span of the system")]
    NotInSpan,
    #[error("no split member with nonzero discriminant over F_{0}")]
    NoSplitMember(u32),
    #[error("bad reduction at p = {0}")]
    BadReduction(u32),
    #[error("group element is not unimodular")]
    NotUnimodular,
    #[error("at least two samples are needed")]
    TooFewSamples,
    #[error("relation constant differs between sample {first} and sample {witness}")]
    InconsistentConstant { first: usize, witness: usize },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
