//! Semi-tensor products of matrices and hypermatrices.
//!
//! `A ⋉ B = (A ⊗ I_{t/n})(B ⊗ I_{t/p})` with `t = lcm(n, p)`. The hypermatrix
//! product pairs slices after aligning the middle indices: equal middle
//! vectors pair slice by slice, otherwise both slice lists are flattened and
//! tiled cyclically up to the lcm of their lengths.

use num::integer::lcm;

use crate::error::{HymError, Result};
use crate::field::Scalar;
use crate::hypermatrix::{Hypermatrix, SliceList};
use crate::matrix::Matrix;

/// Matrix semi-tensor product, computed by gathering blocks directly instead
/// of materializing the Kronecker factors.
pub fn stp_matrix<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (m, n) = (a.rows(), a.cols());
    let (p, q) = (b.rows(), b.cols());
    if n == p {
        return a.matmul(b).expect("conformable");
    }
    let t = lcm(n, p);
    let (ka, kb) = (t / n, t / p);
    let (rows, cols) = (m * ka, q * kb);
    let mut out: Matrix<T> = Matrix::zeros(rows, cols);
    // (A ⊗ I_ka)[i, l] is nonzero only when l ≡ i (mod ka); (B ⊗ I_kb)[l, j]
    // only when l ≡ j (mod kb).
    for i in 0..rows {
        let (ai, ri) = (i / ka, i % ka);
        for u in 0..n {
            let coeff = a.get(ai, u);
            if coeff.is_zero() {
                continue;
            }
            let l = ri + ka * u;
            let (bl, rl) = (l / kb, l % kb);
            for bj in 0..q {
                let j = bj * kb + rl;
                let v = out.get(i, j).clone() + coeff.clone() * b.get(bl, bj).clone();
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Order-3 operands with equal middle dimension, paired slice by slice.
pub fn stph_equal_mids<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    require_order3(a)?;
    require_order3(b)?;
    let (s1, s2) = (a.dims()[1], b.dims()[1]);
    if s1 != s2 {
        return Err(HymError::MidMismatch { left: s1, right: s2 });
    }
    pair_slices(a, b, &[s1])
}

/// Operands of equal order `d >= 3` with identical middle dimension vectors:
/// `π^{-1}(π(A) ⊛ π(B))`.
pub fn stph_general<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    for x in [a, b] {
        if x.order() < 3 {
            return Err(HymError::OrderTooLow {
                order: x.order(),
                required: 3,
            });
        }
    }
    let mids = a.shape().mids();
    if mids != b.shape().mids() {
        return Err(HymError::MidsVectorMismatch {
            left: mids.to_vec(),
            right: b.shape().mids().to_vec(),
        });
    }
    stph_equal_mids(&a.flatten_pi()?, &b.flatten_pi()?)?.unflatten_pi(mids)
}

/// Order-3 operands with middle dimensions `s1`, `s2`: both slice lists are
/// repeated whole (`1^T ⊗ M`) up to `s = lcm(s1, s2)` and paired.
pub fn stph_broadcast<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    require_order3(a)?;
    require_order3(b)?;
    let s = lcm(a.dims()[1], b.dims()[1]);
    pair_slices(a, b, &[s])
}

/// The semi-tensor product of two arbitrary hypermatrices.
///
/// * order 1 is read as a column, order 2 as a matrix with no middle indices;
/// * equal middle vectors pair slice by slice and keep the middle vector;
/// * if one side has a single slice it is applied to every slice of the other,
///   and the result keeps the other side's middle vector (the longer one when
///   both have a single slice);
/// * otherwise both sides are flattened and tiled to `lcm(s1, s2)` slices,
///   giving an order-3 result.
///
/// The scalar `a` of shape `1x1x1` gives `a ⊛ B = B ⊛ a = aB`; a matrix `B`
/// comes back in its embedded form `n x 1 x p`.
pub fn stph<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Hypermatrix<T> {
    let (ma, mb) = (a.shape().mids(), b.shape().mids());
    let (sa, sb) = (a.shape().mid_volume(), b.shape().mid_volume());
    let mids: Vec<usize> = if ma == mb {
        ma.to_vec()
    } else if sa == 1 && sb == 1 {
        if ma.len() >= mb.len() { ma.to_vec() } else { mb.to_vec() }
    } else if sa == 1 {
        mb.to_vec()
    } else if sb == 1 {
        ma.to_vec()
    } else {
        vec![lcm(sa, sb)]
    };
    pair_slices(a, b, &mids).expect("slice pairing is total")
}

/// `C_j = A_{j mod s1} ⋉ B_{j mod s2}` for `j < Π mids`.
fn pair_slices<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>, mids: &[usize]) -> Result<Hypermatrix<T>> {
    let (sa, sb) = (slice_count(a), slice_count(b));
    let s: usize = mids.iter().product();
    debug_assert!(s % sa == 0 && s % sb == 0);
    let a_slices = slice_list(a);
    let b_slices = slice_list(b);
    let slices: Vec<Matrix<T>> = (0..s)
        .map(|j| stp_matrix(&a_slices[j % sa], &b_slices[j % sb]))
        .collect();
    let (front, back) = (slices[0].rows(), slices[0].cols());
    SliceList::new(front, back, mids.to_vec(), slices)?.assemble()
}

fn slice_count<T: Scalar>(x: &Hypermatrix<T>) -> usize {
    if x.order() == 1 {
        1
    } else {
        x.shape().mid_volume()
    }
}

fn slice_list<T: Scalar>(x: &Hypermatrix<T>) -> Vec<Matrix<T>> {
    if x.order() == 1 {
        vec![Matrix::column(x.data().to_vec())]
    } else {
        x.slices().expect("order >= 2").slices
    }
}

fn require_order3<T: Scalar>(x: &Hypermatrix<T>) -> Result<()> {
    if x.order() != 3 {
        return Err(HymError::ShapeMismatch(format!(
            "expected an order-3 operand, got {}",
            x.shape()
        )));
    }
    Ok(())
}

/// Checks `(A ⊛ B)^{-1} = B^{-1} ⊛ A^{-1}` exactly for nonsingular hypersquares.
pub fn stph_inverse_law_check<T: Scalar>(a: &Hypermatrix<T>, b: &Hypermatrix<T>) -> Result<bool> {
    let a_inv = crate::det::inverse(a)?;
    let b_inv = crate::det::inverse(b)?;
    let lhs = crate::det::inverse(&stph(a, b))?;
    Ok(lhs.approx_eq(&stph(&b_inv, &a_inv)))
}
