//! Hyperdeterminants: combinatorial (`cdet`), modified combinatorial
//! (`ddet`) and slice-based (`sdet`), plus nonsingularity and inverses of
//! hypersquares.

use serde::{Deserialize, Serialize};

use crate::compound::mult_compound_matrix;
use crate::error::{HymError, Result};
use crate::field::Scalar;
use crate::hypermatrix::{Hypermatrix, SliceList};
use crate::matrix::Matrix;
use crate::permutation::Permutations;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetKind {
    Combinatorial,
    Modified,
    SliceBased,
}

impl DetKind {
    pub fn needs_hypercubic(self) -> bool {
        matches!(self, DetKind::Combinatorial | DetKind::Modified)
    }
}

/// Size guard for the factorial enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
    pub max_d: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_n: 5, max_d: 4 }
    }
}

impl Budget {
    fn check(self, n: usize, d: usize) -> Result<()> {
        if n > self.max_n || d > self.max_d {
            return Err(HymError::TooLarge {
                n,
                d,
                max_n: self.max_n,
                max_d: self.max_d,
            });
        }
        Ok(())
    }
}

fn hypercubic_size<T: Scalar>(a: &Hypermatrix<T>) -> Result<usize> {
    if !a.shape().is_hypercubic() {
        return Err(HymError::NotHypercubic(a.dims().to_vec()));
    }
    Ok(a.dims()[0])
}

/// Sums `Π_j sgn(σ_j) Π_i a[fixed_i + Σ_j σ_j(i) stride_j]` over all tuples of
/// permutations, one per entry of `strides`. Levels are enumerated
/// recursively, each with its own lexicographic successor iterator.
fn signed_permutation_sum<T: Scalar>(a: &[T], n: usize, base: &[usize], strides: &[usize]) -> T {
    fn level<T: Scalar>(a: &[T], n: usize, offsets: &[usize], strides: &[usize], sign: i64, acc: &mut T) {
        let Some((&stride, rest)) = strides.split_first() else {
            let mut term = T::one();
            for &o in offsets {
                let v = &a[o];
                if v.is_zero() {
                    return;
                }
                term = term * v.clone();
            }
            *acc = if sign > 0 {
                acc.clone() + term
            } else {
                acc.clone() - term
            };
            return;
        };
        let mut next = vec![0usize; n];
        for (perm, s) in Permutations::new(n) {
            for i in 0..n {
                next[i] = offsets[i] + perm[i] * stride;
            }
            level(a, n, &next, rest, sign * s, acc);
        }
    }
    let mut acc = T::zero();
    level(a, n, base, strides, 1, &mut acc);
    acc
}

/// Combinatorial hyperdeterminant
/// `(1/n!) Σ_{σ_1..σ_d} Π_j sgn(σ_j) Π_i a_{σ_1(i),...,σ_d(i)}`.
pub fn cdet<T: Scalar>(a: &Hypermatrix<T>, budget: Budget) -> Result<T> {
    let n = hypercubic_size(a)?;
    let d = a.order();
    budget.check(n, d)?;
    let strides = a.shape().strides();
    let sum = signed_permutation_sum(a.data(), n, &vec![0; n], &strides);
    let factorial = (1..=n as i64).fold(T::one(), |acc, k| acc * T::from_i64(k));
    Ok(sum / factorial)
}

/// Modified combinatorial hyperdeterminant: the first index runs over `i`
/// directly, `Σ_{σ_1..σ_{d-1}} Π_j sgn(σ_j) Π_i a_{i,σ_1(i),...,σ_{d-1}(i)}`.
pub fn ddet<T: Scalar>(a: &Hypermatrix<T>, budget: Budget) -> Result<T> {
    let n = hypercubic_size(a)?;
    let d = a.order();
    budget.check(n, d)?;
    let strides = a.shape().strides();
    let base: Vec<usize> = (0..n).map(|i| i * strides[0]).collect();
    Ok(signed_permutation_sum(a.data(), n, &base, &strides[1..]))
}

/// Slice determinant of one `m x n` matrix: `det` when square, the product of
/// all maximal minors when wide, rejected when tall.
pub fn slice_det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    match m.rows().cmp(&m.cols()) {
        std::cmp::Ordering::Equal => m.det(),
        std::cmp::Ordering::Less => Ok(mult_compound_matrix(m, m.rows())?
            .data()
            .iter()
            .fold(T::one(), |acc, x| acc * x.clone())),
        std::cmp::Ordering::Greater => Err(HymError::TallSlice {
            rows: m.rows(),
            cols: m.cols(),
        }),
    }
}

/// Slice-based hyperdeterminant: the product of slice determinants in slice
/// order.
pub fn sdet<T: Scalar>(a: &Hypermatrix<T>) -> Result<T> {
    let slices = a.slices()?;
    slices
        .slices
        .iter()
        .try_fold(T::one(), |acc, s| Ok(acc * slice_det(s)?))
}

fn require_hypersquare<T: Scalar>(a: &Hypermatrix<T>) -> Result<()> {
    if a.order() < 2 || !a.shape().is_hypersquare() {
        if a.is_scalar() {
            return Ok(());
        }
        return Err(HymError::NotHypersquare(a.dims().to_vec()));
    }
    Ok(())
}

/// `Det(A) ≠ 0`, decided slice by slice so float products cannot underflow.
pub fn is_nonsingular<T: Scalar>(a: &Hypermatrix<T>) -> Result<bool> {
    require_hypersquare(a)?;
    Ok(a.slices()?.slices.iter().all(Matrix::is_invertible))
}

/// The hypersquare whose slices are the inverses of the slices of `a`.
pub fn inverse<T: Scalar>(a: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    require_hypersquare(a)?;
    let sl = a.slices()?;
    let inv = sl
        .slices
        .iter()
        .map(Matrix::inverse)
        .collect::<Result<Vec<_>>>()?;
    let out = SliceList::new(sl.front, sl.back, sl.mids.clone(), inv)?.assemble()?;
    // keep the caller's order for order-1 / order-2 inputs
    Hypermatrix::from_dims(a.dims(), out.into_data())
}
