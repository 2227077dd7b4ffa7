#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use hym_core::compound::combinations;
use hym_core::{Hypermatrix, Matrix, Rational, Scalar};
use num::{One, Zero};
use proptest::prelude::*;

pub type Q = Rational;

pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

pub fn qm(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_i64_rows(rows)
}

pub fn hq(dims: &[usize], data: &[i64]) -> Hypermatrix<Q> {
    Hypermatrix::from_i64(dims, data).unwrap()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

// ---------------------------------------------------------------- Kronecker

pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (r, c) = (a.rows() * b.rows(), a.cols() * b.cols());
    let mut data = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            let x = a.get(i / b.rows(), j / b.cols()).clone();
            let y = b.get(i % b.rows(), j % b.cols()).clone();
            data.push(x * y);
        }
    }
    Matrix::new(r, c, data).unwrap()
}

/// `(A ⊗ I_{t/n})(B ⊗ I_{t/p})`, literally.
pub fn stp_by_kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let t = lcm(a.cols(), b.rows());
    let left = kron(a, &Matrix::identity(t / a.cols()));
    let right = kron(b, &Matrix::identity(t / b.rows()));
    left.matmul(&right).unwrap()
}

// ---------------------------------------------------------------- Leibniz

/// Sign of a 0-based permutation by counting inversions.
pub fn inversion_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Every permutation of `0..n` by Heap-free recursive insertion.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `Σ_σ sgn(σ) Π_i m[i][σ(i)]` over a ring that only needs `+ - *`.
pub fn leibniz<R>(m: &[Vec<R>]) -> R
where
    R: Clone + Zero + One + Sub<Output = R>,
{
    let n = m.len();
    let mut acc = R::zero();
    for p in all_permutations(n) {
        let mut term = R::one();
        for (i, &j) in p.iter().enumerate() {
            term = term * m[i][j].clone();
        }
        acc = if inversion_sign(&p) > 0 { acc + term } else { acc - term };
    }
    acc
}

/// Cofactor expansion along the first row, for `k ≤ 3`.
pub fn laplace_det<T: Scalar>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        3 => {
            let mut acc = T::zero();
            for c in 0..3 {
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = m[0][c].clone() * laplace_det(&minor);
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        _ => panic!("laplace oracle is limited to k <= 3"),
    }
}

fn rows_of<T: Clone>(m: &Matrix<T>) -> Vec<Vec<T>>
where
    T: Scalar,
{
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Matrix of `k`-minors via a caller-supplied determinant.
pub fn compound_with<T: Scalar>(a: &Matrix<T>, k: usize, det: impl Fn(&[Vec<T>]) -> T) -> Matrix<T> {
    let rows = rows_of(a);
    let ra = combinations(a.rows(), k);
    let ca = combinations(a.cols(), k);
    let mut data = Vec::new();
    for r in &ra {
        for c in &ca {
            let sub: Vec<Vec<T>> = r.iter().map(|&i| c.iter().map(|&j| rows[i][j].clone()).collect()).collect();
            data.push(det(&sub));
        }
    }
    Matrix::new(ra.len(), ca.len(), data).unwrap()
}

// ---------------------------------------------------------------- jets

/// First-order jet `a + bε` with `ε² = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub re: Q,
    pub eps: Q,
}

impl Jet {
    pub fn new(re: Q, eps: Q) -> Self {
        Jet { re, eps }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.re + o.re, self.eps + o.eps)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.re - o.re, self.eps - o.eps)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.re.clone() * o.re.clone(),
            self.re * o.eps + self.eps * o.re,
        )
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.re, -self.eps)
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::new(Q::zero(), Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::new(Q::one(), Q::zero())
    }
}

/// `d/dε (I + εA)^{(k)}` at `ε = 0`, computed with jets and Leibniz minors.
pub fn additive_compound_by_jets(a: &Matrix<Q>, k: usize) -> Matrix<Q> {
    let n = a.rows();
    let m: Vec<Vec<Jet>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let re = if i == j { Q::one() } else { Q::zero() };
                    Jet::new(re, a.get(i, j).clone())
                })
                .collect()
        })
        .collect();
    let subsets = combinations(n, k);
    let mut data = Vec::new();
    for r in &subsets {
        for c in &subsets {
            let sub: Vec<Vec<Jet>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
            data.push(leibniz(&sub).eps);
        }
    }
    Matrix::new(subsets.len(), subsets.len(), data).unwrap()
}

// ---------------------------------------------------------------- brute force hyperdeterminants

fn tuples(n: usize, count: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = all_permutations(n);
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..count {
        out = out
            .into_iter()
            .flat_map(|t| {
                perms.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `(1/n!) Σ Π_j sgn(σ_j) Π_i a[σ_1(i), ..., σ_d(i)]`, every tuple listed.
pub fn brute_cdet(a: &Hypermatrix<Q>) -> Q {
    let n = a.dims()[0];
    let d = a.order();
    let mut acc = Q::zero();
    for t in tuples(n, d) {
        let sign: i64 = t.iter().map(|p| inversion_sign(p)).product();
        let mut term = q(sign);
        for i in 0..n {
            let idx: Vec<usize> = t.iter().map(|p| p[i] + 1).collect();
            term = term * a.get(&idx).unwrap().clone();
        }
        acc = acc + term;
    }
    acc / q(factorial(n))
}

/// `Σ Π_j sgn(σ_j) Π_i a[i, σ_1(i), ..., σ_{d-1}(i)]`.
pub fn brute_ddet(a: &Hypermatrix<Q>) -> Q {
    let n = a.dims()[0];
    let d = a.order();
    let mut acc = Q::zero();
    for t in tuples(n, d - 1) {
        let sign: i64 = t.iter().map(|p| inversion_sign(p)).product();
        let mut term = q(sign);
        for i in 0..n {
            let mut idx = vec![i + 1];
            idx.extend(t.iter().map(|p| p[i] + 1));
            term = term * a.get(&idx).unwrap().clone();
        }
        acc = acc + term;
    }
    acc
}

// ---------------------------------------------------------------- slices by index

/// Slice `m` (0-based, lexicographic middle index) read through `get`.
pub fn slice_by_get(a: &Hypermatrix<Q>, m: usize) -> Matrix<Q> {
    let dims = a.dims();
    let d = dims.len();
    let mids = &dims[1..d - 1];
    let mut mid_idx = vec![0; mids.len()];
    let mut rest = m;
    for k in (0..mids.len()).rev() {
        mid_idx[k] = rest % mids[k] + 1;
        rest /= mids[k];
    }
    let mut data = Vec::new();
    for i in 1..=dims[0] {
        for j in 1..=dims[d - 1] {
            let mut idx = vec![i];
            idx.extend(&mid_idx);
            idx.push(j);
            data.push(a.get(&idx).unwrap().clone());
        }
    }
    Matrix::new(dims[0], dims[d - 1], data).unwrap()
}

// ---------------------------------------------------------------- strategies

pub fn small_q() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| qr(n, d))
}

pub fn matrix_of(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Q>> {
    prop::collection::vec(small_q(), rows * cols).prop_map(move |d| Matrix::new(rows, cols, d).unwrap())
}

pub fn matrix_q(max: usize) -> impl Strategy<Value = Matrix<Q>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix_of(r, c))
}

pub fn hyper_with_dims(dims: Vec<usize>) -> impl Strategy<Value = Hypermatrix<Q>> {
    let v: usize = dims.iter().product();
    prop::collection::vec(small_q(), v).prop_map(move |d| Hypermatrix::from_dims(&dims, d).unwrap())
}

/// Orders 1 to `max_order`, each dimension in `1..=max_dim`.
pub fn hyper_q(max_order: usize, max_dim: usize) -> impl Strategy<Value = Hypermatrix<Q>> {
    prop::collection::vec(1..=max_dim, 1..=max_order).prop_flat_map(hyper_with_dims)
}

/// `(front, mids..., back)` with mids volume at most 4 and outer dims at most `max_dim`.
pub fn mixed_dims(max_dim: usize) -> impl Strategy<Value = Vec<usize>> {
    let mids = prop_oneof![
        Just(vec![]),
        (1..=4usize).prop_map(|a| vec![a]),
        prop_oneof![Just(vec![1, 1]), Just(vec![1, 2]), Just(vec![2, 1]), Just(vec![2, 2]), Just(vec![1, 4]), Just(vec![4, 1]), Just(vec![1, 3])],
    ];
    (1..=max_dim, mids, 1..=max_dim).prop_map(|(f, m, b)| {
        let mut d = vec![f];
        d.extend(m);
        d.push(b);
        d
    })
}

pub fn mixed_hyper(max_dim: usize) -> impl Strategy<Value = Hypermatrix<Q>> {
    mixed_dims(max_dim).prop_flat_map(hyper_with_dims)
}
