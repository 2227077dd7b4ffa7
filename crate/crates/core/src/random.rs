//! Seeded generators of small random instances.
//!
//! Each trial gets its own ChaCha stream derived from `(seed, trial)` so that
//! results do not depend on how trials are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Scalar;
use crate::hypermatrix::Hypermatrix;
use crate::matrix::Matrix;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `p/q` with `p ∈ [-4, 4]`, `q ∈ [1, 3]`.
pub fn scalar<T: Scalar, R: Rng>(rng: &mut R) -> T {
    T::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_scalar<T: Scalar, R: Rng>(rng: &mut R) -> T {
    loop {
        let x: T = scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn matrix<T: Scalar, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix<T> {
    let data = (0..rows * cols).map(|_| scalar(rng)).collect();
    Matrix::new(rows, cols, data).expect("length matches")
}

pub fn invertible_matrix<T: Scalar, R: Rng>(rng: &mut R, n: usize) -> Matrix<T> {
    loop {
        let m = matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn hypermatrix<T: Scalar, R: Rng>(rng: &mut R, dims: &[usize]) -> Hypermatrix<T> {
    let v: usize = dims.iter().product();
    let data = (0..v).map(|_| scalar(rng)).collect();
    Hypermatrix::from_dims(dims, data).expect("valid dims")
}

/// A hypersquare `n x mids x n` whose slices are all invertible.
pub fn nonsingular_hypersquare<T: Scalar, R: Rng>(rng: &mut R, n: usize, mids: &[usize]) -> Hypermatrix<T> {
    let s: usize = mids.iter().product();
    let slices = (0..s).map(|_| invertible_matrix(rng, n)).collect();
    crate::hypermatrix::SliceList::new(n, n, mids.to_vec(), slices)
        .and_then(|sl| sl.assemble())
        .expect("consistent slices")
}

/// A middle-dimension vector with volume at most `max_volume`: empty (a
/// matrix), a single dimension, or a factored pair.
pub fn mids<R: Rng>(rng: &mut R, max_volume: usize) -> Vec<usize> {
    let max_volume = max_volume.max(1);
    match rng.gen_range(0..4) {
        0 => vec![],
        1 | 2 => vec![rng.gen_range(1..=max_volume)],
        _ => {
            let pairs: Vec<(usize, usize)> = (1..=max_volume)
                .flat_map(|a| (1..=max_volume / a).map(move |b| (a, b)))
                .collect();
            let &(a, b) = pairs.choose(rng).expect("nonempty");
            vec![a, b]
        }
    }
}

/// Full dims `(front, mids..., back)` with outer dims in `[1, max_dim]`.
pub fn dims<R: Rng>(rng: &mut R, max_dim: usize, max_volume: usize) -> Vec<usize> {
    let mut d = vec![rng.gen_range(1..=max_dim)];
    d.extend(mids(rng, max_volume));
    d.push(rng.gen_range(1..=max_dim));
    d
}

/// `V diag(λ) V^{-1}` together with `V` and `λ`; the spectrum uses distinct
/// integers so planted eigenvectors are the only ones.
pub fn planted_spectrum<T: Scalar, R: Rng>(rng: &mut R, n: usize) -> (Matrix<T>, Matrix<T>, Vec<T>) {
    let mut pool: Vec<i64> = (-6..=6).collect();
    pool.shuffle(rng);
    let lambdas: Vec<T> = pool[..n].iter().map(|&v| T::from_i64(v)).collect();
    let v = invertible_matrix(rng, n);
    let a = v
        .matmul(&Matrix::diagonal(&lambdas))
        .and_then(|m| m.matmul(&v.inverse()?))
        .expect("invertible");
    (a, v, lambdas)
}
