//! Dense matrices over a [`Scalar`] backend, with exact row reduction.

use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], F::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| {
                    if b.is_zero() {
                        a.clone()
                    } else {
                        a.clone() + b.clone()
                    }
                })
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| {
                    if b.is_zero() {
                        a.clone()
                    } else {
                        a.clone() - b.clone()
                    }
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        self.map(|x| {
            if x.is_zero() {
                F::zero()
            } else {
                x.clone() * c.clone()
            }
        })
    }

    pub fn adjoint(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest column 1-norm, the operator-norm estimate used for tolerances.
    pub fn max_column_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Exact equality for exact backends; for floating entries the
    /// difference is measured against the larger operand's column norm.
    pub fn equals(&self, rhs: &Matrix<F>, tol: f64) -> bool {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return false;
        }
        if F::EXACT {
            return self == rhs;
        }
        let scale = self.max_column_norm().max(rhs.max_column_norm());
        self.sub(rhs).max_column_norm() <= tol * scale
    }

    /// Column-norm size of `self - rhs`; zero exactly when equal in exact backends.
    pub fn defect(&self, rhs: &Matrix<F>) -> f64 {
        let diff = self.sub(rhs);
        if F::EXACT && diff.is_zero() {
            0.0
        } else {
            diff.max_column_norm()
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

fn negligible<F: Scalar>(x: &F, scale: f64) -> bool {
    if F::EXACT {
        x.is_zero()
    } else {
        x.norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Scalar>(m: &mut Matrix<F>) -> Vec<usize> {
    let scale = if F::EXACT { 1.0 } else { m.max_column_norm() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let candidate = if F::EXACT {
            (row..m.rows).find(|&r| !m[(r, col)].is_zero())
        } else {
            (row..m.rows)
                .filter(|&r| !negligible(&m[(r, col)], scale))
                .max_by(|&a, &b| m[(a, col)].norm().total_cmp(&m[(b, col)].norm()))
        };
        let Some(p) = candidate else { continue };
        if p != row {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
        }
        let inv = m[(row, col)].inv().expect("pivot is nonzero");
        for j in col..m.cols {
            let x = m[(row, j)].clone();
            m[(row, j)] = x * inv.clone();
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for j in col..m.cols {
                let pivot_entry = &m[(row, j)];
                if pivot_entry.is_zero() {
                    continue;
                }
                let delta = factor.clone() * pivot_entry.clone();
                let cur = std::mem::replace(&mut m[(r, j)], F::zero());
                m[(r, j)] = cur - delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    let mut work = if m.rows > m.cols {
        m.transpose()
    } else {
        m.clone()
    };
    row_reduce(&mut work).len()
}

/// A basis of the null space, one vector per free column.
pub fn kernel_basis<F: Scalar>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = row_reduce(&mut work);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work[(r, f)].clone();
            }
            v
        })
        .collect()
}

pub fn inverse<F: Scalar>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
}

/// Orthogonal projection onto the span of `basis` (columns of length `dim`).
pub fn orthogonal_projection<F: Scalar>(dim: usize, basis: &[Vec<F>]) -> Option<Matrix<F>> {
    if basis.is_empty() {
        return Some(Matrix::zeros(dim, dim));
    }
    let b = Matrix::from_columns(dim, basis);
    let bt = b.adjoint();
    let gram_inv = inverse(&bt.mul(&b))?;
    Some(b.mul(&gram_inv).mul(&bt))
}
