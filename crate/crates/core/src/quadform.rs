//! Quadratic forms over Q and F_p: congruence diagonalization, isotropic
//! vectors, Witt splitting, and the determinantal / Pfaffian representations
//! of split forms in four and six variables.
//!
//! The Gram convention is `q(x) = x^T G x`, so `G_ii` is the coefficient of
//! `x_i^2` and `G_ij` is half the coefficient of `x_i x_j`. Characteristic 2
//! is excluded by the scalar types themselves.

use thiserror::Error;

use crate::algebra::{reduce, AlgebraError, Fp, Matrix, MultiPoly, OddPrime, Rational, Scalar};
use crate::construction::LinearMatrix;

pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadFormError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("quadratic form dimension {0} outside 1..=6")]
    Dimension(usize),
    #[error("polynomial is not a quadratic form")]
    NotQuadratic,
    #[error("quadratic form is degenerate")]
    Degenerate,
    #[error("no isotropic vector exists (anisotropic form)")]
    NotFound,
    #[error("form is not split: Witt index {found}, need {needed}")]
    NotSplit { found: usize, needed: usize },
    #[error("change of basis is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm<S: Scalar> {
    gram: Matrix<S>,
}

/// Invertible change of basis `x = M y`, acting on Gram matrices by
/// `G -> M^T G M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry<S: Scalar> {
    m: Matrix<S>,
}

impl<S: Scalar> Isometry<S> {
    pub fn new(m: Matrix<S>) -> Result<Self, QuadFormError> {
        if !m.is_square() || m.det()?.is_zero() {
            return Err(QuadFormError::NotInvertible);
        }
        Ok(Isometry { m })
    }

    pub fn identity(n: usize, field: S::Field) -> Self {
        Isometry {
            m: Matrix::identity(n, field),
        }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }
}

impl<S: Scalar> QuadraticForm<S> {
    pub fn new(gram: Matrix<S>) -> Result<Self, QuadFormError> {
        let n = gram.rows();
        if !gram.is_square() || n == 0 || n > MAX_DIM {
            return Err(QuadFormError::Dimension(n.max(gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(QuadFormError::NotSymmetric);
        }
        Ok(QuadraticForm { gram })
    }

    pub fn diagonal(entries: &[S], field: S::Field) -> Result<Self, QuadFormError> {
        Self::new(Matrix::diagonal(entries, field))
    }

    /// Reads a homogeneous quadratic polynomial, halving cross terms.
    pub fn from_poly(p: &MultiPoly<S>) -> Result<Self, QuadFormError> {
        let n = p.nvars();
        if n == 0 || n > MAX_DIM {
            return Err(QuadFormError::Dimension(n));
        }
        if !p.is_homogeneous() || p.degree().is_some_and(|d| d != 2) {
            return Err(QuadFormError::NotQuadratic);
        }
        let field = p.field();
        let half = S::from_i64(field, 2).inv().expect("odd characteristic");
        let mut g = Matrix::zeros(n, n, field);
        for (m, c) in p.terms() {
            let idx: Vec<usize> = m
                .exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                g[(i, i)] = c.clone();
            } else {
                let h = c.clone() * half.clone();
                g[(i, j)] = h.clone();
                g[(j, i)] = h;
            }
        }
        Self::new(g)
    }

    pub fn to_poly(&self) -> MultiPoly<S> {
        let n = self.dim();
        let field = self.field();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j {
                    self.gram[(i, i)].clone()
                } else {
                    self.gram[(i, j)].clone() * S::from_i64(field, 2)
                };
                terms.push((crate::algebra::Monomial::new(e), c));
            }
        }
        MultiPoly::from_terms(n, field, terms)
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> S::Field {
        self.gram.field()
    }

    pub fn bilinear(&self, x: &[S], y: &[S]) -> S {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .fold(S::zero(self.field()), |acc, (a, b)| {
                acc + a.clone() * b.clone()
            })
    }

    pub fn eval(&self, x: &[S]) -> S {
        self.bilinear(x, x)
    }

    /// `det G`; zero iff the form is degenerate.
    pub fn disc(&self) -> S {
        self.gram.det().expect("square Gram matrix")
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_degenerate(&self) -> bool {
        self.disc().is_zero()
    }

    pub fn transform(&self, iso: &Isometry<S>) -> Self {
        let m = iso.matrix();
        QuadraticForm {
            gram: &(&m.transpose() * &self.gram) * m,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QuadFormError> {
        Ok(QuadraticForm {
            gram: self.gram.checked_add(&other.gram)?,
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        QuadraticForm {
            gram: self.gram.scale(c),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.gram[(i, j)].is_zero()))
    }

    /// Congruence diagonalization: returns `M` and the diagonal form
    /// `M^T G M`.
    pub fn diagonalize(&self) -> (Isometry<S>, QuadraticForm<S>) {
        let (m, d) = diagonalize_symmetric(&self.gram);
        (Isometry { m }, QuadraticForm { gram: d })
    }
}

/// Congruence diagonalization of a symmetric matrix of any size: returns
/// `M` and the diagonal `M^T G M`. Zero pivots are repaired by mixing in an
/// off-diagonal partner, which needs characteristic different from 2.
pub fn diagonalize_symmetric<S: Scalar>(gram: &Matrix<S>) -> (Matrix<S>, Matrix<S>) {
    let n = gram.rows();
    let field = gram.field();
    let mut g = gram.clone();
    let mut m = Matrix::identity(n, field);
    for k in 0..n {
        if g[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[(j, j)].is_zero()) {
                swap_basis(&mut g, &mut m, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !g[(k, j)].is_zero()) {
                add_basis(&mut g, &mut m, k, j, &S::one(field));
            } else {
                continue;
            }
        }
        let pivot_inv = g[(k, k)].inv().unwrap();
        for j in k + 1..n {
            if g[(k, j)].is_zero() {
                continue;
            }
            let c = -(g[(k, j)].clone() * pivot_inv.clone());
            add_basis(&mut g, &mut m, j, k, &c);
        }
    }
    (m, g)
}

/// Swap basis vectors `a` and `b`.
fn swap_basis<S: Scalar>(g: &mut Matrix<S>, m: &mut Matrix<S>, a: usize, b: usize) {
    let n = g.rows();
    g.swap_rows(a, b);
    for i in 0..n {
        let t = g[(i, a)].clone();
        g[(i, a)] = g[(i, b)].clone();
        g[(i, b)] = t;
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Replace basis vector `a` by `e_a + c e_b`.
fn add_basis<S: Scalar>(g: &mut Matrix<S>, m: &mut Matrix<S>, a: usize, b: usize, c: &S) {
    let n = g.rows();
    for i in 0..n {
        let t = g[(i, a)].clone() + c.clone() * g[(i, b)].clone();
        g[(i, a)] = t;
        let t = m[(i, a)].clone() + c.clone() * m[(i, b)].clone();
        m[(i, a)] = t;
    }
    for j in 0..n {
        let t = g[(a, j)].clone() + c.clone() * g[(b, j)].clone();
        g[(a, j)] = t;
    }
}

impl QuadraticForm<Rational> {
    /// Reduction mod p; fails when p divides a denominator.
    pub fn reduce(&self, p: OddPrime) -> Result<QuadraticForm<Fp>, AlgebraError> {
        Ok(QuadraticForm {
            gram: self.gram.try_map(p, |c| reduce(c, p))?,
        })
    }
}

/// Result of splitting off hyperbolic planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition<S: Scalar> {
    /// Number of hyperbolic planes `x_{2i} x_{2i+1}`.
    pub hyperbolic: usize,
    /// Diagonal entries of the anisotropic remainder (length 0, 1 or 2).
    pub residual: Vec<S>,
    /// Columns `e_1, f_1, ..., e_h, f_h, r_1, ...`: the form in these
    /// coordinates is `sum x_{2i} x_{2i+1} + sum residual_j y_j^2`.
    pub isometry: Isometry<S>,
}

impl<S: Scalar> WittDecomposition<S> {
    /// The Gram matrix the isometry carries the form to.
    pub fn target(&self) -> QuadraticForm<S> {
        let field = self.isometry.matrix().field();
        let n = 2 * self.hyperbolic + self.residual.len();
        let half = S::from_i64(field, 2).inv().unwrap();
        let mut g = Matrix::zeros(n, n, field);
        for i in 0..self.hyperbolic {
            g[(2 * i, 2 * i + 1)] = half.clone();
            g[(2 * i + 1, 2 * i)] = half.clone();
        }
        for (k, d) in self.residual.iter().enumerate() {
            let i = 2 * self.hyperbolic + k;
            g[(i, i)] = d.clone();
        }
        QuadraticForm { gram: g }
    }
}

impl QuadraticForm<Fp> {
    /// A nonzero `v` with `q(v) = 0`. Always exists for nondegenerate forms
    /// of dimension at least 3; in dimension 2 iff `-disc` is a square.
    ///
    /// Deterministic: coordinate vectors are tried first, then a sweep over
    /// the first diagonal coordinate.
    pub fn isotropic_vector(&self) -> Result<Vec<Fp>, QuadFormError> {
        if self.is_degenerate() {
            return Err(QuadFormError::Degenerate);
        }
        let n = self.dim();
        let field = self.field();
        if let Some(i) = (0..n).find(|&i| self.gram[(i, i)].is_zero()) {
            let mut v = vec![Fp::zero(field); n];
            v[i] = Fp::one(field);
            return Ok(v);
        }
        if n == 1 {
            return Err(QuadFormError::NotFound);
        }
        let (iso, diag) = self.diagonalize();
        let d: Vec<Fp> = (0..n).map(|i| diag.gram[(i, i)]).collect();
        let mut y = vec![Fp::zero(field); n];
        if n == 2 {
            // d0 y0^2 + d1 = 0
            let t = (-d[1]).div(&d[0]).unwrap();
            y[0] = t.sqrt().ok_or(QuadFormError::NotFound)?;
            y[1] = Fp::one(field);
        } else {
            // d0 y0^2 + d1 y1^2 + d2 = 0 has a solution for some y0
            y[2] = Fp::one(field);
            let found = field.elements().find_map(|y0| {
                let t = (-d[2] - d[0] * y0 * y0).div(&d[1]).unwrap();
                t.sqrt().map(|y1| (y0, y1))
            });
            let (y0, y1) = found.expect("ternary forms over finite fields are isotropic");
            y[0] = y0;
            y[1] = y1;
        }
        Ok(iso.matrix().mul_vec(&y))
    }

    /// Splits off hyperbolic planes until the remainder is anisotropic.
    pub fn witt_split(&self) -> Result<WittDecomposition<Fp>, QuadFormError> {
        if self.is_degenerate() {
            return Err(QuadFormError::Degenerate);
        }
        let n = self.dim();
        let field = self.field();
        let two = Fp::from_i64(field, 2);
        let mut basis: Vec<Vec<Fp>> = (0..n)
            .map(|i| {
                let mut v = vec![Fp::zero(field); n];
                v[i] = Fp::one(field);
                v
            })
            .collect();
        let mut columns: Vec<Vec<Fp>> = Vec::new();
        let mut hyperbolic = 0;
        while basis.len() >= 2 {
            let sub = self.restrict(&basis);
            let v_sub = match sub.isotropic_vector() {
                Ok(v) => v,
                Err(QuadFormError::NotFound) => break,
                Err(e) => return Err(e),
            };
            let e = combine(&basis, &v_sub, field);
            let w = basis
                .iter()
                .find(|b| !self.bilinear(&e, b).is_zero())
                .expect("nondegenerate restriction")
                .clone();
            let s = two.inv().unwrap().div(&self.bilinear(&e, &w)).unwrap();
            let w: Vec<Fp> = w.iter().map(|c| *c * s).collect();
            let qw = self.eval(&w);
            let f: Vec<Fp> = w.iter().zip(&e).map(|(a, b)| *a - qw * *b).collect();
            let projected: Vec<Vec<Fp>> = basis
                .iter()
                .map(|b| {
                    let cf = two * self.bilinear(b, &f);
                    let ce = two * self.bilinear(b, &e);
                    (0..n).map(|i| b[i] - cf * e[i] - ce * f[i]).collect()
                })
                .collect();
            basis = independent_subset(projected, field);
            columns.push(e);
            columns.push(f);
            hyperbolic += 1;
        }
        let mut residual = Vec::new();
        if !basis.is_empty() {
            let sub = self.restrict(&basis);
            let (iso, diag) = sub.diagonalize();
            for k in 0..basis.len() {
                let col = iso.matrix().column(k);
                columns.push(combine(&basis, &col, field));
                residual.push(diag.gram[(k, k)]);
            }
        }
        let m = Matrix::from_fn(n, n, field, |i, j| columns[j][i]);
        Ok(WittDecomposition {
            hyperbolic,
            residual,
            isometry: Isometry::new(m)?,
        })
    }

    fn restrict(&self, basis: &[Vec<Fp>]) -> QuadraticForm<Fp> {
        let k = basis.len();
        QuadraticForm {
            gram: Matrix::from_fn(k, k, self.field(), |i, j| {
                self.bilinear(&basis[i], &basis[j])
            }),
        }
    }

    /// A 2x2 matrix of linear forms with `det A(x) = q(x)`, for a split
    /// form in four variables.
    pub fn express_as_2x2_det(&self) -> Result<LinearMatrix<Fp>, QuadFormError> {
        if self.dim() != 4 {
            return Err(QuadFormError::Dimension(self.dim()));
        }
        let field = self.field();
        if *self == LinearMatrix::canonical_2x2(field).det_form()? {
            return Ok(LinearMatrix::canonical_2x2(field));
        }
        let w = self.witt_split()?;
        if w.hyperbolic < 2 {
            return Err(QuadFormError::NotSplit {
                found: w.hyperbolic,
                needed: 2,
            });
        }
        // q = u0 u1 + u2 u3 with u = M^{-1} x, and det [[u0, u2], [-u3, u1]] = u0 u1 + u2 u3
        let inv = w.isometry.matrix().inverse()?;
        let entries = [
            (0, 0, 0, false),
            (0, 1, 2, false),
            (1, 0, 3, true),
            (1, 1, 1, false),
        ];
        let coeffs = (0..4)
            .map(|k| {
                let mut a = Matrix::zeros(2, 2, field);
                for &(r, c, u, neg) in &entries {
                    a[(r, c)] = if neg { -inv[(u, k)] } else { inv[(u, k)] };
                }
                a
            })
            .collect();
        Ok(LinearMatrix::new(coeffs, false)?)
    }

    /// An alternating 4x4 matrix of linear forms with `Pf A(x) = q(x)`, for
    /// a form in six variables isometric to the Klein form.
    pub fn express_as_pfaffian(&self) -> Result<LinearMatrix<Fp>, QuadFormError> {
        if self.dim() != 6 {
            return Err(QuadFormError::Dimension(self.dim()));
        }
        let field = self.field();
        if *self == LinearMatrix::klein_coordinates(field).pfaffian_form()? {
            return Ok(LinearMatrix::klein_coordinates(field));
        }
        let w = self.witt_split()?;
        if w.hyperbolic < 3 {
            return Err(QuadFormError::NotSplit {
                found: w.hyperbolic,
                needed: 3,
            });
        }
        // Klein coordinates y = (m12, m13, m14, m23, m24, m34) with
        // Pf = y0 y5 - y1 y4 + y2 y3 = u0 u1 + u2 u3 + u4 u5
        let inv = w.isometry.matrix().inverse()?;
        let y_from_u: [(usize, bool); 6] = [
            (0, false),
            (2, false),
            (4, false),
            (5, false),
            (3, true),
            (1, false),
        ];
        let coeffs = (0..6)
            .map(|k| {
                let klein: Vec<Fp> = y_from_u
                    .iter()
                    .map(|&(u, neg)| if neg { -inv[(u, k)] } else { inv[(u, k)] })
                    .collect();
                LinearMatrix::alternating_from_klein(&klein)
            })
            .collect();
        Ok(LinearMatrix::new(coeffs, true)?)
    }
}

fn combine(basis: &[Vec<Fp>], coords: &[Fp], field: OddPrime) -> Vec<Fp> {
    let n = basis[0].len();
    (0..n)
        .map(|i| {
            basis
                .iter()
                .zip(coords)
                .fold(Fp::zero(field), |acc, (b, c)| acc + b[i] * *c)
        })
        .collect()
}

fn independent_subset(vectors: Vec<Vec<Fp>>, field: OddPrime) -> Vec<Vec<Fp>> {
    let mut kept: Vec<Vec<Fp>> = Vec::new();
    for v in vectors {
        let mut rows = kept.clone();
        rows.push(v.clone());
        let m = Matrix::from_rows(rows, field).unwrap();
        if m.rank() == kept.len() + 1 {
            kept.push(v);
        }
    }
    kept
}
