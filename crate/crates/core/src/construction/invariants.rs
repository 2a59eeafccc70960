//! The invariants `B` (span coordinates of det / Pf) and `T` (determinant of
//! the coefficient matrices) of a matrix of linear forms.

use rand::Rng;
use serde::Serialize;

use super::{ConstructionError, LinearMatrix};
use crate::algebra::{Fp, Matrix, MultiPoly, OddPrime, Scalar};
use crate::quadform::QuadraticForm;
use crate::systems::QuadricSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantData<S> {
    pub b: Vec<S>,
    pub t: S,
}

/// The quadric a matrix of linear forms defines: `det A(x)` for 2x2 in four
/// variables, `Pf A(x)` for alternating 4x4 in six.
fn quadric<S: Scalar>(a: &LinearMatrix<S>) -> Result<MultiPoly<S>, ConstructionError> {
    match (a.size(), a.nvars(), a.is_alternating()) {
        (2, 4, _) => Ok(a.det_poly()?),
        (4, 6, true) => Ok(a.pfaffian_poly()?),
        (m, n, _) => Err(ConstructionError::Shape(format!(
            "need 2x2 in 4 variables or alternating 4x4 in 6 variables, got {m}x{m} in {n}"
        ))),
    }
}

/// `B` with `det A(x) = sum B_i q_i` (or `Pf A(x) = sum B_i q_i`).
pub fn b_coordinates<S: Scalar, Sys: QuadricSystem<S>>(
    a: &LinearMatrix<S>,
    system: &Sys,
) -> Result<Vec<S>, ConstructionError> {
    if a.nvars() != system.nvars() {
        return Err(ConstructionError::Shape(format!(
            "matrix has {} variables, system has {}",
            a.nvars(),
            system.nvars()
        )));
    }
    let q = QuadraticForm::from_poly(&quadric(a)?)?;
    system
        .span_coordinates(&q)
        .ok_or(ConstructionError::NotInSpan)
}

/// Pencil case: det of the 4x4 matrix with columns `A_i` flattened row-major.
/// Net case: det of the 6x6 matrix of Klein coordinates of the `A_i`.
pub fn t_invariant<S: Scalar>(a: &LinearMatrix<S>) -> Result<S, ConstructionError> {
    quadric(a)?;
    let m = if a.size() == 2 {
        a.flattening()
    } else {
        a.klein_matrix()?
    };
    Ok(m.det()?)
}

pub fn invariants<S: Scalar, Sys: QuadricSystem<S>>(
    a: &LinearMatrix<S>,
    system: &Sys,
) -> Result<InvariantData<S>, ConstructionError> {
    Ok(InvariantData {
        b: b_coordinates(a, system)?,
        t: t_invariant(a)?,
    })
}

/// `A -> g A h^T` on 2x2 matrices, or `A -> g A g^T` on alternating 4x4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAction<S: Scalar> {
    Pair(Matrix<S>, Matrix<S>),
    Congruence(Matrix<S>),
}

impl<S: Scalar> GroupAction<S> {
    pub fn apply(&self, a: &LinearMatrix<S>) -> Result<LinearMatrix<S>, ConstructionError> {
        match self {
            GroupAction::Pair(g, h) if a.size() == 2 && g.rows() == 2 && h.rows() == 2 => {
                Ok(a.act(g, h)?)
            }
            GroupAction::Congruence(g) if a.size() == 4 && g.rows() == 4 => Ok(a.congruence(g)?),
            _ => Err(ConstructionError::Shape(
                "group element does not match the matrix size".into(),
            )),
        }
    }

    fn is_unimodular(&self) -> Result<bool, ConstructionError> {
        let one = |m: &Matrix<S>| -> Result<bool, ConstructionError> { Ok(m.det()?.is_one()) };
        match self {
            GroupAction::Pair(g, h) => Ok(one(g)? && one(h)?),
            GroupAction::Congruence(g) => one(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport<S> {
    pub before: InvariantData<S>,
    pub after: InvariantData<S>,
    pub invariant: bool,
}

/// Recomputes `(B, T)` after a special linear action.
pub fn group_invariance_check<S: Scalar, Sys: QuadricSystem<S>>(
    a: &LinearMatrix<S>,
    system: &Sys,
    action: &GroupAction<S>,
) -> Result<InvarianceReport<S>, ConstructionError> {
    if !action.is_unimodular()? {
        return Err(ConstructionError::NotUnimodular);
    }
    let before = invariants(a, system)?;
    let after = invariants(&action.apply(a)?, system)?;
    let invariant = before == after;
    Ok(InvarianceReport {
        before,
        after,
        invariant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CovarianceReport<S> {
    /// `det g det h` for pairs, `det g` for congruence.
    pub b_factor: S,
    /// `(det g det h)^2` for pairs, `(det g)^3` for congruence.
    pub t_factor: S,
    pub holds: bool,
}

/// Checks `B -> b_factor B` and `T -> t_factor T` under an invertible action.
pub fn covariance_check<S: Scalar, Sys: QuadricSystem<S>>(
    a: &LinearMatrix<S>,
    system: &Sys,
    action: &GroupAction<S>,
) -> Result<CovarianceReport<S>, ConstructionError> {
    let (b_factor, t_factor) = match action {
        GroupAction::Pair(g, h) => {
            let d = g.det()? * h.det()?;
            (d.clone(), d.clone() * d)
        }
        GroupAction::Congruence(g) => {
            let d = g.det()?;
            (d.clone(), d.clone() * d.clone() * d)
        }
    };
    if b_factor.is_zero() {
        return Err(ConstructionError::Algebra(
            crate::algebra::AlgebraError::Singular,
        ));
    }
    let before = invariants(a, system)?;
    let after = invariants(&action.apply(a)?, system)?;
    let holds = after.t == t_factor.clone() * before.t
        && after
            .b
            .iter()
            .zip(&before.b)
            .all(|(x, y)| *x == b_factor.clone() * y.clone());
    Ok(CovarianceReport {
        b_factor,
        t_factor,
        holds,
    })
}

/// A uniformly drawn invertible matrix.
pub fn random_general_linear<R: Rng + ?Sized>(n: usize, p: OddPrime, rng: &mut R) -> Matrix<Fp> {
    loop {
        let m = Matrix::from_fn(n, n, p, |_, _| {
            Fp::new(p, rng.random_range(0..p.get() as i64))
        });
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

/// A uniformly drawn invertible matrix with its first row rescaled to make
/// the determinant 1.
pub fn random_special_linear<R: Rng + ?Sized>(n: usize, p: OddPrime, rng: &mut R) -> Matrix<Fp> {
    loop {
        let mut m = Matrix::from_fn(n, n, p, |_, _| {
            Fp::new(p, rng.random_range(0..p.get() as i64))
        });
        let d = m.det().unwrap();
        if let Some(inv) = d.inv() {
            for j in 0..n {
                m[(0, j)] = m[(0, j)] * inv;
            }
            return m;
        }
    }
}
