//! Binary quartic forms `a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4` and
//! their classical invariants.

use serde::Serialize;

use super::{AlgebraError, Monomial, MultiPoly, Scalar, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuartic<S: Scalar> {
    coeffs: [S; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticInvariants<S> {
    pub i: S,
    pub j: S,
    pub disc: S,
}

impl<S: Scalar> BinaryQuartic<S> {
    /// Coefficients `(a, b, c, d, e)`; the zero form is rejected.
    pub fn new(coeffs: [S; 5]) -> Result<Self, AlgebraError> {
        if coeffs.iter().all(S::is_zero) {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(BinaryQuartic { coeffs })
    }

    /// Reads a homogeneous quartic in two variables.
    pub fn from_poly(p: &MultiPoly<S>) -> Result<Self, AlgebraError> {
        if p.nvars() != 2 {
            return Err(AlgebraError::VariableCount {
                left: 2,
                right: p.nvars(),
            });
        }
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if !p.is_homogeneous() || p.degree() != Some(4) {
            return Err(AlgebraError::Shape("not a binary quartic form".into()));
        }
        Self::new(std::array::from_fn(|k| p.coeff(&[4 - k as u32, k as u32])))
    }

    pub fn coeffs(&self) -> &[S; 5] {
        &self.coeffs
    }

    pub fn field(&self) -> S::Field {
        self.coeffs[0].field()
    }

    pub fn to_poly(&self) -> MultiPoly<S> {
        MultiPoly::from_terms(
            2,
            self.field(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::new(vec![4 - k as u32, k as u32]), c.clone())),
        )
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.to_poly().eval(&[x.clone(), y.clone()]).unwrap()
    }

    /// `f(t, 1)` as a univariate polynomial; degree drops when `a = 0`.
    pub fn dehomogenize(&self) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect(), self.field())
    }

    /// Four distinct roots on the projective line.
    pub fn is_squarefree(&self) -> bool {
        let [a, b, ..] = &self.coeffs;
        if a.is_zero() && b.is_zero() {
            return false;
        }
        self.dehomogenize().is_squarefree()
    }

    pub fn invariants(&self) -> QuarticInvariants<S> {
        let k = |n: i64| S::from_i64(self.field(), n);
        let [a, b, c, d, e] = self.coeffs.clone();
        let i =
            k(12) * a.clone() * e.clone() - k(3) * b.clone() * d.clone() + c.clone() * c.clone();
        let j = k(72) * a.clone() * c.clone() * e.clone()
            + k(9) * b.clone() * c.clone() * d.clone()
            - k(27) * a.clone() * d.clone() * d.clone()
            - k(27) * b.clone() * b.clone() * e.clone()
            - k(2) * c.clone() * c.clone() * c.clone();
        // the integral discriminant, equal to (4 I^3 - J^2) / 27
        let terms: [(i64, [u32; 5]); 16] = [
            (256, [3, 0, 0, 0, 3]),
            (-192, [2, 1, 0, 1, 2]),
            (-128, [2, 0, 2, 0, 2]),
            (144, [2, 0, 1, 2, 1]),
            (-27, [2, 0, 0, 4, 0]),
            (144, [1, 2, 1, 0, 2]),
            (-6, [1, 2, 0, 2, 1]),
            (-80, [1, 1, 2, 1, 1]),
            (18, [1, 1, 1, 3, 0]),
            (16, [1, 0, 4, 0, 1]),
            (-4, [1, 0, 3, 2, 0]),
            (-27, [0, 4, 0, 0, 2]),
            (18, [0, 3, 1, 1, 1]),
            (-4, [0, 3, 0, 3, 0]),
            (-4, [0, 2, 3, 0, 1]),
            (1, [0, 2, 2, 2, 0]),
        ];
        let disc = terms.iter().fold(k(0), |acc, (n, es)| {
            let t = es
                .iter()
                .zip(&self.coeffs)
                .fold(k(*n), |t, (&e, x)| t * x.pow(e as u64));
            acc + t
        });
        QuarticInvariants { i, j, disc }
    }

    /// `j = 1728 * 4 I^3 / (4 I^3 - J^2)`, computed as `256 I^3 / disc`.
    pub fn j_invariant(&self) -> Result<S, AlgebraError> {
        let inv = self.invariants();
        if inv.disc.is_zero() {
            return Err(AlgebraError::DegenerateQuartic);
        }
        let num = S::from_i64(self.field(), 256) * inv.i.pow(3);
        Ok(num.div(&inv.disc).unwrap())
    }

    /// `f(alpha x + beta y, gamma x + delta y)`.
    pub fn substitute(&self, m: [[S; 2]; 2]) -> Result<Self, AlgebraError> {
        let field = self.field();
        let imgs = [
            MultiPoly::linear(&m[0], field),
            MultiPoly::linear(&m[1], field),
        ];
        let p = self.to_poly().substitute(&imgs)?;
        Self::from_poly(&p)
    }
}
