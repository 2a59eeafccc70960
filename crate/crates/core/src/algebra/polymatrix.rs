//! Matrices with polynomial entries: symbolic determinants and Pfaffians.

use std::collections::HashMap;
use std::ops::Index;

use super::{AlgebraError, Matrix, MultiPoly, Scalar};

const MAX_DET: usize = 8;
const MAX_PFAFFIAN: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly<S>>,
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<MultiPoly<S>>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape(
                "empty or ragged polynomial matrix".into(),
            ));
        }
        let nvars = rows[0][0].nvars();
        if let Some(bad) = rows.iter().flatten().find(|p| p.nvars() != nvars) {
            return Err(AlgebraError::VariableCount {
                left: nvars,
                right: bad.nvars(),
            });
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `sum_i x_i * mats[i]`, a matrix of linear forms in `mats.len()` variables.
    pub fn linear_combination(mats: &[Matrix<S>]) -> Result<Self, AlgebraError> {
        let first = mats
            .first()
            .ok_or_else(|| AlgebraError::Shape("no matrices to combine".into()))?;
        let (r, c) = (first.rows(), first.cols());
        if mats.iter().any(|m| (m.rows(), m.cols()) != (r, c)) {
            return Err(AlgebraError::Shape("matrices of different shapes".into()));
        }
        let field = first.field();
        let rows = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        let coeffs: Vec<S> = mats.iter().map(|m| m[(i, j)].clone()).collect();
                        MultiPoly::linear(&coeffs, field)
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn from_constant(m: &Matrix<S>, nvars: usize) -> Self {
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            nvars,
            entries: (0..m.rows())
                .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
                .map(|(i, j)| MultiPoly::constant(m[(i, j)].clone(), nvars))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            nvars: self.nvars,
            entries: (0..self.cols)
                .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
                .map(|(i, j)| self[(i, j)].clone())
                .collect(),
        }
    }

    pub fn is_alternating(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn eval(&self, point: &[S]) -> Result<Matrix<S>, AlgebraError> {
        let vals: Vec<S> = self
            .entries
            .iter()
            .map(|p| p.eval(point))
            .collect::<Result<_, _>>()?;
        let field = self.entries[0].field();
        Ok(Matrix::from_fn(self.rows, self.cols, field, |i, j| {
            vals[i * self.cols + j].clone()
        }))
    }

    /// Exact determinant by cofactor expansion along rows, memoizing the
    /// minors on the remaining column subsets.
    pub fn det(&self) -> Result<MultiPoly<S>, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n > MAX_DET {
            return Err(AlgebraError::TooLarge(n));
        }
        let field = self.entries[0].field();
        // minors of the last (n - k) rows, keyed by column bitmask
        let mut minors: HashMap<u32, MultiPoly<S>> = HashMap::new();
        minors.insert(0, MultiPoly::one(self.nvars, field));
        for k in (0..n).rev() {
            let size = n - k;
            let mut next = HashMap::new();
            for mask in (0u32..1 << n).filter(|m| m.count_ones() as usize == size) {
                let mut acc = MultiPoly::zero(self.nvars, field);
                for (pos, j) in (0..n).filter(|j| mask >> j & 1 == 1).enumerate() {
                    let a = &self[(k, j)];
                    if a.is_zero() {
                        continue;
                    }
                    let sub = &minors[&(mask & !(1 << j))];
                    if sub.is_zero() {
                        continue;
                    }
                    let t = a * sub;
                    acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                next.insert(mask, acc);
            }
            minors = next;
        }
        Ok(minors.remove(&((1u32 << n) - 1)).unwrap())
    }

    /// Pfaffian of an alternating matrix of even size at most 6, expanded
    /// along the first remaining row.
    pub fn pfaffian(&self) -> Result<MultiPoly<S>, AlgebraError> {
        if self.rows != self.cols || self.rows % 2 == 1 {
            return Err(AlgebraError::Shape(
                "Pfaffian needs an even square matrix".into(),
            ));
        }
        if self.rows > MAX_PFAFFIAN {
            return Err(AlgebraError::TooLarge(self.rows));
        }
        if !self.is_alternating() {
            return Err(AlgebraError::NotAlternating);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pf_rec(&idx))
    }

    fn pf_rec(&self, idx: &[usize]) -> MultiPoly<S> {
        let field = self.entries[0].field();
        if idx.is_empty() {
            return MultiPoly::one(self.nvars, field);
        }
        let i = idx[0];
        let mut acc = MultiPoly::zero(self.nvars, field);
        for (k, &j) in idx.iter().enumerate().skip(1) {
            let a = &self[(i, j)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&l| l != j).collect();
            let t = a * &self.pf_rec(&rest);
            // sign (-1)^(k+1) with k the 0-based position of j in idx
            acc = if k % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        acc
    }
}

impl<S: Scalar> Index<(usize, usize)> for PolyMatrix<S> {
    type Output = MultiPoly<S>;
    fn index(&self, (i, j): (usize, usize)) -> &MultiPoly<S> {
        &self.entries[i * self.cols + j]
    }
}
