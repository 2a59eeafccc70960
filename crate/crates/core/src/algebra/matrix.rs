//! Dense matrices over an exact field.

use std::ops::{Index, IndexMut, Mul};

use super::{AlgebraError, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<S: Scalar> {
    field: S::Field,
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize, field: S::Field) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![S::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: S::Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m[(i, i)] = S::one(field);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: S::Field,
        mut f: impl FnMut(usize, usize) -> S,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, field: S::Field) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[S], field: S::Field) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len(), field);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn field(&self) -> S::Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.field, |i, j| {
            self[(j, i)].clone()
        })
    }

    pub fn map<T: Scalar>(&self, field: T::Field, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Scalar, E>(
        &self,
        field: T::Field,
        f: impl Fn(&S) -> Result<T, E>,
    ) -> Result<Matrix<T>, E> {
        Ok(Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(self.field, |a| a.clone() * c.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::Shape(
                "addition of differently shaped matrices".into(),
            ));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.field, |i, j| {
            (0..self.cols).fold(S::zero(self.field), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(self.field), |acc, (a, b)| {
                        acc + a.clone() * b.clone()
                    })
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    /// Fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<S, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Shape(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign_flip = false;
        let mut prev = S::one(self.field);
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(S::zero(self.field)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num.div(&prev).expect("Bareiss pivot is nonzero");
                }
                a[i][k] = S::zero(self.field);
            }
            prev = a[k][k].clone();
        }
        let d = if n == 0 {
            S::one(self.field)
        } else {
            a[n - 1][n - 1].clone()
        };
        Ok(if sign_flip { -d } else { d })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().unwrap();
            for j in 0..self.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..self.cols {
                        let t = m[(r, j)].clone() * f.clone();
                        m[(i, j)] = m[(i, j)].clone() - t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(self.field); self.cols];
                v[f] = S::one(self.field);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, self.field, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one(self.field)
            } else {
                S::zero(self.field)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(AlgebraError::Singular);
        }
        Ok(Self::from_fn(n, n, self.field, |i, j| {
            r[(i, j + n)].clone()
        }))
    }

    /// Some solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, self.field, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<S: Scalar> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.checked_mul(rhs).expect("matrix shapes")
    }
}
