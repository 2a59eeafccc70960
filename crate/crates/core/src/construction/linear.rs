//! Matrices of linear forms `A(x) = sum_i A_i x_i`.

use crate::algebra::{AlgebraError, Matrix, MultiPoly, PolyMatrix, Scalar};
use crate::quadform::{QuadFormError, QuadraticForm};

/// Upper-triangle positions of a 4x4 alternating matrix in Klein order
/// `e12, e13, e14, e23, e24, e34`.
pub const KLEIN_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatrix<S: Scalar> {
    size: usize,
    coeffs: Vec<Matrix<S>>,
    alternating: bool,
}

impl<S: Scalar> LinearMatrix<S> {
    pub fn new(coeffs: Vec<Matrix<S>>, alternating: bool) -> Result<Self, AlgebraError> {
        let first = coeffs
            .first()
            .ok_or_else(|| AlgebraError::Shape("no coefficient matrices".into()))?;
        let size = first.rows();
        if coeffs.iter().any(|a| a.rows() != size || a.cols() != size) {
            return Err(AlgebraError::Shape(
                "coefficient matrices must be square of equal size".into(),
            ));
        }
        if alternating && !coeffs.iter().all(Matrix::is_alternating) {
            return Err(AlgebraError::NotAlternating);
        }
        Ok(LinearMatrix {
            size,
            coeffs,
            alternating,
        })
    }

    /// `[[x0, x1], [x2, x3]]`.
    pub fn canonical_2x2(field: S::Field) -> Self {
        let coeffs = (0..4)
            .map(|k| {
                let mut a = Matrix::zeros(2, 2, field);
                a[(k / 2, k % 2)] = S::one(field);
                a
            })
            .collect();
        LinearMatrix {
            size: 2,
            coeffs,
            alternating: false,
        }
    }

    /// The alternating 4x4 matrix whose Klein coordinates are `x0..x5`.
    pub fn klein_coordinates(field: S::Field) -> Self {
        let coeffs = (0..6)
            .map(|k| {
                let mut y = vec![S::zero(field); 6];
                y[k] = S::one(field);
                Self::alternating_from_klein(&y)
            })
            .collect();
        LinearMatrix {
            size: 4,
            coeffs,
            alternating: true,
        }
    }

    pub fn alternating_from_klein(y: &[S]) -> Matrix<S> {
        let field = y[0].field();
        let mut a = Matrix::zeros(4, 4, field);
        for (&(i, j), v) in KLEIN_PAIRS.iter().zip(y) {
            a[(i, j)] = v.clone();
            a[(j, i)] = -v.clone();
        }
        a
    }

    pub fn klein_vector(a: &Matrix<S>) -> Vec<S> {
        KLEIN_PAIRS
            .iter()
            .map(|&(i, j)| a[(i, j)].clone())
            .collect()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Matrix<S>] {
        &self.coeffs
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn field(&self) -> S::Field {
        self.coeffs[0].field()
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix<S> {
        PolyMatrix::linear_combination(&self.coeffs).expect("validated shapes")
    }

    pub fn eval(&self, x: &[S]) -> Result<Matrix<S>, AlgebraError> {
        self.to_poly_matrix().eval(x)
    }

    pub fn det_poly(&self) -> Result<MultiPoly<S>, AlgebraError> {
        self.to_poly_matrix().det()
    }

    pub fn pfaffian_poly(&self) -> Result<MultiPoly<S>, AlgebraError> {
        if !self.alternating {
            return Err(AlgebraError::NotAlternating);
        }
        self.to_poly_matrix().pfaffian()
    }

    /// `det A(x)` as a quadratic form; only for 2x2 matrices.
    pub fn det_form(&self) -> Result<QuadraticForm<S>, QuadFormError> {
        if self.size != 2 {
            return Err(AlgebraError::Shape("determinant form needs a 2x2 matrix".into()).into());
        }
        QuadraticForm::from_poly(&self.det_poly()?)
    }

    /// `Pf A(x)` as a quadratic form; only for alternating 4x4 matrices.
    pub fn pfaffian_form(&self) -> Result<QuadraticForm<S>, QuadFormError> {
        if self.size != 4 {
            return Err(AlgebraError::Shape("Pfaffian form needs a 4x4 matrix".into()).into());
        }
        QuadraticForm::from_poly(&self.pfaffian_poly()?)
    }

    /// The `m^2 x n` matrix whose `i`-th column is `A_i` flattened row-major.
    pub fn flattening(&self) -> Matrix<S> {
        let m = self.size;
        Matrix::from_fn(m * m, self.nvars(), self.field(), |r, i| {
            self.coeffs[i][(r / m, r % m)].clone()
        })
    }

    /// The `6 x n` matrix of Klein coordinates of the `A_i`.
    pub fn klein_matrix(&self) -> Result<Matrix<S>, AlgebraError> {
        if !self.alternating || self.size != 4 {
            return Err(AlgebraError::NotAlternating);
        }
        Ok(Matrix::from_fn(6, self.nvars(), self.field(), |r, i| {
            let (a, b) = KLEIN_PAIRS[r];
            self.coeffs[i][(a, b)].clone()
        }))
    }

    pub fn scale(&self, t: &S) -> Self {
        LinearMatrix {
            size: self.size,
            coeffs: self.coeffs.iter().map(|a| a.scale(t)).collect(),
            alternating: self.alternating,
        }
    }

    /// `A_i -> g A_i h^T`.
    pub fn act(&self, g: &Matrix<S>, h: &Matrix<S>) -> Result<Self, AlgebraError> {
        let ht = h.transpose();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| g.checked_mul(a)?.checked_mul(&ht))
            .collect::<Result<_, _>>()?;
        Self::new(coeffs, self.alternating && g == h)
    }

    /// `A_i -> g A_i g^T`, preserving alternation.
    pub fn congruence(&self, g: &Matrix<S>) -> Result<Self, AlgebraError> {
        self.act(g, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational, Q};

    #[test]
    fn canonical_forms() {
        let a = LinearMatrix::<Rational>::canonical_2x2(Q);
        assert_eq!(a.det_poly().unwrap().to_string(), "x0*x3 - x1*x2");
        assert_eq!(a.flattening(), Matrix::identity(4, Q));
        let k = LinearMatrix::<Rational>::klein_coordinates(Q);
        assert_eq!(
            k.pfaffian_poly().unwrap().to_string(),
            "x0*x5 - x1*x4 + x2*x3"
        );
        assert_eq!(k.klein_matrix().unwrap(), Matrix::identity(6, Q));
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert!(LinearMatrix::<Rational>::new(vec![], false).is_err());
        let sq = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]], Q).unwrap();
        assert_eq!(
            LinearMatrix::new(vec![sq], true),
            Err(AlgebraError::NotAlternating)
        );
        let mixed = vec![Matrix::<Rational>::identity(2, Q), Matrix::identity(3, Q)];
        assert!(LinearMatrix::new(mixed, false).is_err());
    }

    #[test]
    fn klein_round_trip() {
        let y: Vec<Rational> = (1..=6).map(int).collect();
        let a = LinearMatrix::alternating_from_klein(&y);
        assert!(a.is_alternating());
        assert_eq!(LinearMatrix::klein_vector(&a), y);
    }
}
