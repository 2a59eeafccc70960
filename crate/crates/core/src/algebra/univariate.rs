//! Dense univariate polynomials: gcd, squarefreeness and resultants.

use super::{AlgebraError, Matrix, Scalar};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<S: Scalar> {
    field: S::Field,
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>, field: S::Field) -> Self {
        while coeffs.last().is_some_and(S::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: S::Field) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(self.field), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * S::from_i64(self.field, i as i64))
            .collect();
        Self::new(c, self.field)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                Self::new(
                    self.coeffs
                        .iter()
                        .map(|c| c.clone() * inv.clone())
                        .collect(),
                    self.field,
                )
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let lc_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(self.field); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap().clone() * lc_inv.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - f.clone() * c.clone();
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(S::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot, self.field), Self::new(rem, self.field)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// True iff `gcd(f, f')` is constant. Zero is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.derivative();
        if d.is_zero() {
            // constant (or inseparable, which cannot happen in our degrees)
            return self.degree() == Some(0);
        }
        self.gcd(&d).map(|g| g.degree() == Some(0)).unwrap_or(false)
    }

    /// Sylvester matrix with the `g`-degree many rows of `f` first.
    pub fn sylvester_matrix(&self, g: &Self) -> Result<Matrix<S>, AlgebraError> {
        let m = self.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let n = g.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let size = m + n;
        let mut s = Matrix::zeros(size, size, self.field);
        for r in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                s[(r, r + k)] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in g.coeffs.iter().rev().enumerate() {
                s[(n + r, r + k)] = c.clone();
            }
        }
        Ok(s)
    }

    /// Resultant by the Euclidean remainder sequence, normalized to agree
    /// with the Sylvester determinant.
    pub fn resultant(&self, g: &Self) -> Result<S, AlgebraError> {
        if self.is_zero() && g.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(res_rec(self, g))
    }
}

fn res_rec<S: Scalar>(f: &UniPoly<S>, g: &UniPoly<S>) -> S {
    let field = f.field;
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return S::zero(field);
    };
    if n == 0 {
        return g.coeffs[0].pow(m as u64);
    }
    if m == 0 {
        return f.coeffs[0].pow(n as u64);
    }
    let sign = |x: S| if (m * n) % 2 == 1 { -x } else { x };
    if m < n {
        return sign(res_rec(g, f));
    }
    let r = f.div_rem(g).unwrap().1;
    let Some(dr) = r.degree() else {
        return S::zero(field);
    };
    let lc = g.leading().unwrap().pow((m - dr) as u64);
    sign(lc * res_rec(g, &r))
}
