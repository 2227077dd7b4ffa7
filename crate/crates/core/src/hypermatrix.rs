//! Hypermatrix storage, matrix expressions, slices and transposes.
//!
//! Entries are stored in lexicographic order of `(i_1, ..., i_d)` with the
//! last index fastest. Multi-indices at the public surface are 1-based.

use std::fmt;

use crate::error::{HymError, Result};
use crate::field::{max_norm, slices_agree, Scalar};
use crate::matrix::Matrix;
use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(HymError::BadShape("order must be at least 1".into()));
        }
        if dims.contains(&0) {
            return Err(HymError::BadShape(format!("zero dimension in {dims:?}")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| HymError::BadShape(format!("volume of {dims:?} overflows")))?;
        Ok(Shape {
            dims: dims.to_vec(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn volume(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn front(&self) -> usize {
        self.dims[0]
    }

    pub fn back(&self) -> usize {
        self.dims[self.dims.len() - 1]
    }

    /// `(n_2, ..., n_{d-1})`; empty for orders 1 and 2.
    pub fn mids(&self) -> &[usize] {
        if self.dims.len() < 3 {
            &[]
        } else {
            &self.dims[1..self.dims.len() - 1]
        }
    }

    /// Number of slices, `n_2 * ... * n_{d-1}`.
    pub fn mid_volume(&self) -> usize {
        self.mids().iter().product()
    }

    pub fn is_hypercubic(&self) -> bool {
        self.dims.iter().all(|&n| n == self.dims[0])
    }

    pub fn is_hypersquare(&self) -> bool {
        self.front() == self.back()
    }

    /// Row-major strides: `Π_{j>k} n_j`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// 0-based offset of a 1-based multi-index.
    pub fn offset(&self, index: &[usize]) -> Result<usize> {
        if index.len() != self.dims.len()
            || index.iter().zip(&self.dims).any(|(&i, &n)| i == 0 || i > n)
        {
            return Err(HymError::IndexOutOfRange {
                index: index.to_vec(),
                dims: self.dims.clone(),
            });
        }
        Ok(index
            .iter()
            .zip(self.strides())
            .map(|(&i, s)| (i - 1) * s)
            .sum())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Visits every 0-based multi-index of `dims` in lexicographic order.
pub(crate) fn for_each_index(dims: &[usize], mut f: impl FnMut(&[usize])) {
    let volume: usize = dims.iter().product();
    let mut idx = vec![0usize; dims.len()];
    for _ in 0..volume {
        f(&idx);
        for k in (0..dims.len()).rev() {
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Row/column split `(α, β)` of the index positions `[1, d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPartition {
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

impl IndexPartition {
    /// `alpha` holds 1-based positions; `beta` is its sorted complement.
    pub fn from_alpha(alpha: &[usize], d: usize) -> Result<Self> {
        if alpha.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HymError::BadPartition(format!("{alpha:?} is not strictly increasing")));
        }
        if alpha.iter().any(|&a| a == 0 || a > d) {
            return Err(HymError::BadPartition(format!("{alpha:?} not within [1,{d}]")));
        }
        let beta = (1..=d).filter(|i| !alpha.contains(i)).collect();
        Ok(IndexPartition {
            alpha: alpha.to_vec(),
            beta,
        })
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn order(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }
}

/// `M_A = [A_1, ..., A_s]`: the `n_1 x n_d` slices of a hypermatrix ordered by
/// lexicographic middle multi-index.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceList<T> {
    pub front: usize,
    pub back: usize,
    pub mids: Vec<usize>,
    pub slices: Vec<Matrix<T>>,
}

impl<T: Scalar> SliceList<T> {
    pub fn new(front: usize, back: usize, mids: Vec<usize>, slices: Vec<Matrix<T>>) -> Result<Self> {
        let s: usize = mids.iter().product();
        if slices.len() != s {
            return Err(HymError::LengthMismatch {
                expected: s,
                actual: slices.len(),
            });
        }
        if let Some(bad) = slices.iter().find(|m| m.rows() != front || m.cols() != back) {
            return Err(HymError::ShapeMismatch(format!(
                "slice is {}x{}, expected {front}x{back}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(SliceList {
            front,
            back,
            mids,
            slices,
        })
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Column-block concatenation, i.e. `M_A`.
    pub fn concat(&self) -> Matrix<T> {
        Matrix::hcat(&self.slices).expect("slices share a row count")
    }

    /// Inverse of [`Hypermatrix::slices`].
    pub fn assemble(&self) -> Result<Hypermatrix<T>> {
        let s = self.slices.len();
        let (n1, nd) = (self.front, self.back);
        let mut data = vec![T::zero(); n1 * s * nd];
        for (m, slice) in self.slices.iter().enumerate() {
            for i in 0..n1 {
                for j in 0..nd {
                    data[i * s * nd + m * nd + j] = slice.get(i, j).clone();
                }
            }
        }
        let mut dims = Vec::with_capacity(self.mids.len() + 2);
        dims.push(n1);
        dims.extend_from_slice(&self.mids);
        dims.push(nd);
        Hypermatrix::new(Shape::new(&dims)?, data)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypermatrix<T> {
    shape: Shape,
    data: Vec<T>,
}

impl<T: Scalar> Hypermatrix<T> {
    pub fn new(shape: Shape, data: Vec<T>) -> Result<Self> {
        if data.len() != shape.volume() {
            return Err(HymError::LengthMismatch {
                expected: shape.volume(),
                actual: data.len(),
            });
        }
        Ok(Hypermatrix { shape, data })
    }

    pub fn from_dims(dims: &[usize], data: Vec<T>) -> Result<Self> {
        Hypermatrix::new(Shape::new(dims)?, data)
    }

    pub fn from_i64(dims: &[usize], data: &[i64]) -> Result<Self> {
        Hypermatrix::from_dims(dims, data.iter().map(|&v| T::from_i64(v)).collect())
    }

    /// Builds entries from a function of the 1-based multi-index.
    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> T) -> Result<Self> {
        let shape = Shape::new(dims)?;
        let mut data = Vec::with_capacity(shape.volume());
        let mut one_based = vec![0; dims.len()];
        for_each_index(dims, |idx| {
            for (o, i) in one_based.iter_mut().zip(idx) {
                *o = i + 1;
            }
            data.push(f(&one_based));
        });
        Hypermatrix::new(shape, data)
    }

    pub fn zeros(dims: &[usize]) -> Result<Self> {
        let shape = Shape::new(dims)?;
        let data = vec![T::zero(); shape.volume()];
        Ok(Hypermatrix { shape, data })
    }

    pub fn scalar(value: T) -> Self {
        Hypermatrix {
            shape: Shape { dims: vec![1, 1, 1] },
            data: vec![value],
        }
    }

    /// Views a matrix as an order-2 hypermatrix.
    pub fn from_matrix(m: &Matrix<T>) -> Self {
        Hypermatrix {
            shape: Shape {
                dims: vec![m.rows(), m.cols()],
            },
            data: m.data().to_vec(),
        }
    }

    /// `J_n^s`: every slice is `I_n`. Empty `mids` gives the plain identity matrix.
    pub fn identity_hypersquare(n: usize, mids: &[usize]) -> Result<Self> {
        let s: usize = mids.iter().product();
        SliceList::new(n, n, mids.to_vec(), vec![Matrix::identity(n); s])?.assemble()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, index: &[usize]) -> Result<&T> {
        Ok(&self.data[self.shape.offset(index)?])
    }

    pub fn is_scalar(&self) -> bool {
        self.data.len() == 1
    }

    /// `M_A^α`: rows run over the α-multi-index, columns over the β-multi-index,
    /// both lexicographically.
    pub fn matrix_expression(&self, p: &IndexPartition) -> Result<Matrix<T>> {
        let d = self.order();
        if p.order() != d {
            return Err(HymError::BadPartition(format!(
                "partition of [1,{}] applied to order {d}",
                p.order()
            )));
        }
        let dims = self.dims();
        let weights = |positions: &[usize]| -> (usize, Vec<(usize, usize)>) {
            let mut w = Vec::with_capacity(positions.len());
            let mut stride = 1;
            for &pos in positions.iter().rev() {
                w.push((pos - 1, stride));
                stride *= dims[pos - 1];
            }
            (stride, w)
        };
        let (rows, row_w) = weights(p.alpha());
        let (cols, col_w) = weights(p.beta());
        let mut out = vec![T::zero(); rows * cols];
        let mut offset = 0;
        for_each_index(dims, |idx| {
            let r: usize = row_w.iter().map(|&(k, s)| idx[k] * s).sum();
            let c: usize = col_w.iter().map(|&(k, s)| idx[k] * s).sum();
            out[r * cols + c] = self.data[offset].clone();
            offset += 1;
        });
        Matrix::new(rows, cols, out)
    }

    /// `M_A = M_A^{{1}}`.
    pub fn m_a(&self) -> Matrix<T> {
        let p = IndexPartition::from_alpha(&[1], self.order()).expect("order >= 1");
        self.matrix_expression(&p).expect("partition matches order")
    }

    /// Inverse of [`Hypermatrix::matrix_expression`].
    pub fn from_matrix_expression(dims: &[usize], p: &IndexPartition, m: &Matrix<T>) -> Result<Self> {
        let shape = Shape::new(dims)?;
        if p.order() != dims.len() {
            return Err(HymError::BadPartition("partition order differs from dims".into()));
        }
        let n_alpha: usize = p.alpha().iter().map(|&i| dims[i - 1]).product();
        let n_beta: usize = p.beta().iter().map(|&i| dims[i - 1]).product();
        if m.rows() != n_alpha || m.cols() != n_beta {
            return Err(HymError::DimensionMismatch(format!(
                "expected {n_alpha}x{n_beta} expression, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let flat_row = |idx: &[usize], positions: &[usize]| {
            positions
                .iter()
                .fold(0, |acc, &pos| acc * dims[pos - 1] + idx[pos - 1])
        };
        let mut data = Vec::with_capacity(shape.volume());
        for_each_index(dims, |idx| {
            data.push(m.get(flat_row(idx, p.alpha()), flat_row(idx, p.beta())).clone());
        });
        Hypermatrix::new(shape, data)
    }

    /// Decomposes into `n_1 x n_d` slices.
    pub fn slices(&self) -> Result<SliceList<T>> {
        if self.order() < 2 {
            if self.is_scalar() {
                return SliceList::new(1, 1, vec![], vec![Matrix::new(1, 1, self.data.clone())?]);
            }
            return Err(HymError::OrderTooLow {
                order: self.order(),
                required: 2,
            });
        }
        let (n1, nd) = (self.shape.front(), self.shape.back());
        let s = self.shape.mid_volume();
        let slices = (0..s)
            .map(|m| {
                let mut data = Vec::with_capacity(n1 * nd);
                for i in 0..n1 {
                    let base = i * s * nd + m * nd;
                    data.extend_from_slice(&self.data[base..base + nd]);
                }
                Matrix::new(n1, nd, data).expect("slice length")
            })
            .collect();
        SliceList::new(n1, nd, self.shape.mids().to_vec(), slices)
    }

    /// Slice `m` (0-based) without materializing the whole list.
    pub fn slice(&self, m: usize) -> Matrix<T> {
        let (n1, nd) = (self.shape.front(), self.shape.back());
        let s = self.shape.mid_volume();
        let mut data = Vec::with_capacity(n1 * nd);
        for i in 0..n1 {
            let base = i * s * nd + m * nd;
            data.extend_from_slice(&self.data[base..base + nd]);
        }
        Matrix::new(n1, nd, data).expect("slice length")
    }

    /// `A^σ`, with dims `(n_{σ(1)}, ..., n_{σ(d)})` and `A^σ[j] = A[i]` where
    /// `i_{σ(k)} = j_k`.
    pub fn sigma_transpose(&self, sigma: &Permutation) -> Result<Self> {
        let d = self.order();
        if sigma.degree() != d {
            return Err(HymError::ArityMismatch {
                perm: sigma.degree(),
                order: d,
            });
        }
        let src_strides = self.shape.strides();
        let images = sigma.zero_based();
        let dims: Vec<usize> = images.iter().map(|&k| self.dims()[k]).collect();
        let weights: Vec<usize> = images.iter().map(|&k| src_strides[k]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        for_each_index(&dims, |j| {
            let off: usize = j.iter().zip(&weights).map(|(a, w)| a * w).sum();
            data.push(self.data[off].clone());
        });
        Hypermatrix::from_dims(&dims, data)
    }

    fn require_hypercubic(&self) -> Result<()> {
        if !self.shape.is_hypercubic() {
            return Err(HymError::NotHypercubic(self.dims().to_vec()));
        }
        Ok(())
    }

    /// Checked on the adjacent transpositions, which generate `S_d`.
    pub fn is_symmetric(&self) -> Result<bool> {
        self.require_hypercubic()?;
        for k in 1..self.order() {
            let tau = Permutation::transposition(self.order(), k, k + 1)?;
            if !self.sigma_transpose(&tau)?.approx_eq(self) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Adjacent transpositions are odd, so `A^τ = -A` on each generator
    /// propagates to `A^σ = sgn(σ) A` on all of `S_d`.
    pub fn is_skew_symmetric(&self) -> Result<bool> {
        self.require_hypercubic()?;
        let neg = self.neg();
        for k in 1..self.order() {
            let tau = Permutation::transposition(self.order(), k, k + 1)?;
            if !self.sigma_transpose(&tau)?.approx_eq(&neg) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `π`: merges the middle indices into one, giving shape `(n_1, s, n_d)`.
    /// Storage is already in this order, so only the shape changes.
    pub fn flatten_pi(&self) -> Result<Self> {
        if self.order() < 3 {
            return Err(HymError::OrderTooLow {
                order: self.order(),
                required: 3,
            });
        }
        let dims = [self.shape.front(), self.shape.mid_volume(), self.shape.back()];
        Hypermatrix::from_dims(&dims, self.data.clone())
    }

    /// `π^{-1}` for an order-3 hypermatrix whose middle dimension is `Π mids`.
    pub fn unflatten_pi(&self, mids: &[usize]) -> Result<Self> {
        if self.order() != 3 {
            return Err(HymError::ShapeMismatch(format!(
                "unflatten expects order 3, got {}",
                self.order()
            )));
        }
        let s: usize = mids.iter().product();
        if s != self.dims()[1] {
            return Err(HymError::ShapeMismatch(format!(
                "mids {mids:?} do not multiply to {}",
                self.dims()[1]
            )));
        }
        let mut dims = vec![self.shape.front()];
        dims.extend_from_slice(mids);
        dims.push(self.shape.back());
        Hypermatrix::from_dims(&dims, self.data.clone())
    }

    /// `π_A^α(x) = M_A^α x`.
    pub fn apply_multilinear(&self, p: &IndexPartition, x: &[T]) -> Result<Vec<T>> {
        self.matrix_expression(p)?.mul_vec(x)
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Hypermatrix {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| s.clone() * a.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape != other.shape {
            return Err(HymError::ShapeMismatch(format!("{} vs {}", self.shape, other.shape)));
        }
        Ok(Hypermatrix {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn max_norm(&self) -> f64 {
        max_norm(&self.data)
    }

    /// Same shape and entries: exact for exact fields, otherwise within the
    /// scaled float tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.shape == other.shape && slices_agree(&self.data, &other.data)
    }

    pub fn to_matrix(&self) -> Result<Matrix<T>> {
        match self.order() {
            2 => Matrix::new(self.dims()[0], self.dims()[1], self.data.clone()),
            1 => Ok(Matrix::column(self.data.clone())),
            _ => Err(HymError::ShapeMismatch(format!("{} is not a matrix", self.shape))),
        }
    }

    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Hypermatrix<U> {
        Hypermatrix {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }
}
