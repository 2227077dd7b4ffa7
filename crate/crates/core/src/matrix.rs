//! Dense row-major matrices over a [`Scalar`] field.
//!
//! Indices on [`Matrix`] are 0-based; the 1-based convention only applies to
//! hypermatrix multi-indices.

use std::fmt;

use crate::error::{HymError, Result};
use crate::field::{max_norm, slices_agree, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(HymError::LengthMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(HymError::BadShape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<T>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Matrix::from_rows(data).expect("rectangular integer rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn column(values: Vec<T>) -> Self {
        Matrix {
            rows: values.len(),
            cols: 1,
            data: values,
        }
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

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Ordinary matrix product.
    pub fn matmul(&self, other: &Matrix<T>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(HymError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * other.get(l, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(HymError::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn zip_with(&self, other: &Matrix<T>, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(HymError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Matrix<T>) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| s.clone() * a.clone()).collect(),
        }
    }

    /// Submatrix on the given 0-based rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Horizontal concatenation `[A_1, A_2, ...]`.
    pub fn hcat(blocks: &[Matrix<T>]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(HymError::DimensionMismatch("blocks differ in row count".into()));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn max_norm(&self) -> f64 {
        max_norm(&self.data)
    }

    pub fn approx_eq(&self, other: &Matrix<T>) -> bool {
        self.rows == other.rows && self.cols == other.cols && slices_agree(&self.data, &other.data)
    }

    pub fn is_zero(&self) -> bool {
        let scale = self.max_norm();
        if T::EXACT {
            self.data.iter().all(|a| a.is_zero())
        } else {
            scale == 0.0
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(HymError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Pivot row for column `col` among rows `start..`: first nonzero entry for
    /// exact fields, largest magnitude above tolerance for floats.
    fn pivot_row(&self, col: usize, start: usize, scale: f64) -> Option<usize> {
        if T::EXACT {
            (start..self.rows).find(|&r| !self.get(r, col).is_zero())
        } else {
            let best = (start..self.rows).max_by(|&a, &b| {
                self.get(a, col)
                    .magnitude()
                    .total_cmp(&self.get(b, col).magnitude())
            })?;
            (!self.get(best, col).is_negligible(scale)).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Determinant. Exact fields use fraction-free (Bareiss) elimination,
    /// floats use partial-pivot LU; a float pivot below tolerance yields 0.
    pub fn det(&self) -> Result<T> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(T::one());
        }
        if T::EXACT {
            Ok(self.det_bareiss())
        } else {
            Ok(self.det_lu())
        }
    }

    fn det_bareiss(&self) -> T {
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let Some(p) = m.pivot_row(k, k, 0.0) else {
                return T::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j).clone() * pivot.clone()
                        - m.get(i, k).clone() * m.get(k, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn det_lu(&self) -> T {
        let n = self.rows;
        let scale = self.max_norm();
        let mut m = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let Some(p) = m.pivot_row(k, k, scale) else {
                return T::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let f = m.get(i, k).clone() / pivot.clone();
                for j in k + 1..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let scale = self.max_norm();
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = m.pivot_row(c, rank, scale) else {
                continue;
            };
            m.swap_rows(p, rank);
            let pivot = m.get(rank, c).clone();
            for i in rank + 1..self.rows {
                let f = m.get(i, c).clone() / pivot.clone();
                for j in c..self.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(rank, j).clone();
                    m.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let scale = self.max_norm();
        let mut m = self.clone();
        let mut inv: Matrix<T> = Matrix::identity(n);
        for k in 0..n {
            let p = m.pivot_row(k, k, scale).ok_or(HymError::Singular)?;
            m.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = m.get(k, k).clone();
            for j in 0..n {
                let a = m.get(k, j).clone() / pivot.clone();
                m.set(k, j, a);
                let b = inv.get(k, j).clone() / pivot.clone();
                inv.set(k, j, b);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = m.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let a = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                    m.set(i, j, a);
                    let b = inv.get(i, j).clone() - f.clone() * inv.get(k, j).clone();
                    inv.set(i, j, b);
                }
            }
        }
        Ok(inv)
    }

    pub fn trace(&self) -> Result<T> {
        let n = self.require_square()?;
        Ok((0..n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl Matrix<f64> {
    /// Matrix exponential by scaling and squaring around a truncated Taylor
    /// series.
    pub fn expm(&self) -> Result<Self> {
        let n = self.require_square()?;
        let norm = (0..n)
            .map(|r| self.row(r).iter().map(|a| a.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let mut squarings = 0u32;
        while norm / f64::from(1u32 << squarings.min(30)) > 0.5 && squarings < 60 {
            squarings += 1;
        }
        let scaled = self.scale(&(0.5_f64).powi(squarings as i32));
        let mut sum = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for j in 1..=24 {
            term = term.matmul(&scaled)?.scale(&(1.0 / j as f64));
            sum = sum.add(&term)?;
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum)?;
        }
        Ok(sum)
    }
}
