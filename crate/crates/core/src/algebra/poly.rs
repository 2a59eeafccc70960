//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order (`x0 > x1 > ...`), with no zero coefficients stored.
//! Two equal polynomials therefore have identical term sequences and identical
//! text serializations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Scalar};

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<S: Scalar> {
    field: S::Field,
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(nvars: usize, field: S::Field) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S, nvars: usize) -> Self {
        let mut p = Self::zero(nvars, c.field());
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, field: S::Field) -> Self {
        Self::constant(S::one(field), nvars)
    }

    /// The coordinate function `x_i`.
    pub fn var(i: usize, nvars: usize, field: S::Field) -> Self {
        assert!(
            i < nvars,
            "variable x{i} out of range for {nvars} variables"
        );
        let mut p = Self::zero(nvars, field);
        p.terms.insert(Monomial::var(nvars, i), S::one(field));
        p
    }

    /// The linear form `sum_i c_i x_i`.
    pub fn linear(coeffs: &[S], field: S::Field) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    /// Sums the given terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms(
        nvars: usize,
        field: S::Field,
        terms: impl IntoIterator<Item = (Monomial, S)>,
    ) -> Self {
        let mut p = Self::zero(nvars, field);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> S::Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| S::zero(self.field))
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn constant_value(&self) -> Option<S> {
        match self.degree() {
            None => Some(S::zero(self.field)),
            Some(0) => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut r = Self::zero(self.nvars, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.field);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[S]) -> Result<S, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::VariableCount {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = S::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t * x.pow(e as u64);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Replaces `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[MultiPoly<S>]) -> Result<Self, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::VariableCount {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        for img in images {
            if img.nvars != target {
                return Err(AlgebraError::VariableCount {
                    left: target,
                    right: img.nvars,
                });
            }
        }
        // powers[i][e] = images[i]^e, filled lazily up to the needed degree
        let mut powers: Vec<Vec<MultiPoly<S>>> = images
            .iter()
            .map(|_| vec![Self::one(target, self.field)])
            .collect();
        let mut acc = Self::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), target);
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            r.add_term(
                Monomial(exps),
                c.clone() * S::from_i64(self.field, e as i64),
            );
        }
        r
    }

    pub fn map_coeffs<T: Scalar>(&self, field: T::Field, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        MultiPoly::from_terms(
            self.nvars,
            field,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn try_map_coeffs<T: Scalar, E>(
        &self,
        field: T::Field,
        f: impl Fn(&S) -> Result<T, E>,
    ) -> Result<MultiPoly<T>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(MultiPoly::from_terms(self.nvars, field, terms))
    }
}

impl<S: Scalar> Add for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, rhs: Self) -> MultiPoly<S> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<S: Scalar> Sub for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, rhs: Self) -> MultiPoly<S> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<S: Scalar> Mul for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, rhs: Self) -> MultiPoly<S> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<S: Scalar> Neg for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}
