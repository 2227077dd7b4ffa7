//! Group structure of nonsingular hypersquares under the semi-tensor
//! product, similarity, and slicewise eigenpairs.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::compound::{add_compound_hyper, mult_compound_hyper};
use crate::det::{inverse, is_nonsingular};
use crate::error::{HymError, Result};
use crate::field::Scalar;
use crate::hypermatrix::Hypermatrix;
use crate::matrix::Matrix;
use crate::stp::stph;

/// Signature `n x mids x n` of the carrier `GL(n^s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlSignature {
    pub n: usize,
    pub mids: Vec<usize>,
}

impl GlSignature {
    pub fn new(n: usize, mids: Vec<usize>) -> Result<Self> {
        if n == 0 || mids.contains(&0) {
            return Err(HymError::BadShape(format!("invalid signature n={n}, mids={mids:?}")));
        }
        Ok(GlSignature { n, mids })
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = Vec::with_capacity(self.mids.len() + 2);
        dims.push(self.n);
        dims.extend_from_slice(&self.mids);
        dims.push(self.n);
        dims
    }

    pub fn identity<T: Scalar>(&self) -> Hypermatrix<T> {
        Hypermatrix::identity_hypersquare(self.n, &self.mids).expect("valid signature")
    }
}

pub fn gl_contains<T: Scalar>(sig: &GlSignature, a: &Hypermatrix<T>) -> bool {
    a.dims() == sig.dims().as_slice() && is_nonsingular(a).unwrap_or(false)
}

/// `T^{-1} ⊛ A ⊛ T`.
pub fn similar_transform<T: Scalar>(t: &Hypermatrix<T>, a: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
    if t.dims() != a.dims() {
        return Err(HymError::ShapeMismatch(format!("{} vs {}", t.shape(), a.shape())));
    }
    if !a.shape().is_hypersquare() {
        return Err(HymError::NotHypersquare(a.dims().to_vec()));
    }
    let t_inv = inverse(t)?;
    Ok(stph(&stph(&t_inv, a), t))
}

/// Slicewise eigenpair candidate: one eigenvalue per slice, and `X` of shape
/// `n x mids x 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub lambdas: Vec<T>,
    pub vectors: Hypermatrix<T>,
}

/// Checks `A ⊛ X = λ ⊛ X`, with `λ` acting as the `1 x mids x 1` hypermatrix
/// of per-slice eigenvalues.
pub fn verify_eigenpair<T: Scalar>(a: &Hypermatrix<T>, p: &EigenPair<T>) -> Result<bool> {
    if a.order() < 2 || !a.shape().is_hypersquare() {
        return Err(HymError::NotHypersquare(a.dims().to_vec()));
    }
    let n = a.shape().front();
    let mids = a.shape().mids().to_vec();
    let mut x_dims = vec![n];
    x_dims.extend_from_slice(&mids);
    x_dims.push(1);
    if p.vectors.dims() != x_dims.as_slice() {
        return Err(HymError::ShapeMismatch(format!(
            "eigenvector hypermatrix is {}, expected {x_dims:?}",
            p.vectors.shape()
        )));
    }
    let s = a.shape().mid_volume();
    if p.lambdas.len() != s {
        return Err(HymError::ShapeMismatch(format!(
            "{} eigenvalues for {s} slices",
            p.lambdas.len()
        )));
    }
    let xs = p.vectors.slices()?;
    if let Some(i) = xs.slices.iter().position(Matrix::is_zero) {
        return Err(HymError::ZeroSliceVector(i + 1));
    }
    let mut l_dims = vec![1];
    l_dims.extend_from_slice(&mids);
    l_dims.push(1);
    let lambda = Hypermatrix::from_dims(&l_dims, p.lambdas.clone())?;
    Ok(stph(a, &p.vectors).approx_eq(&stph(&lambda, &p.vectors)))
}

/// Roots of the characteristic polynomial of a matrix of size at most 3,
/// in closed form, polished with a few Newton steps.
pub fn eig_small(a: &Matrix<f64>) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(HymError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > 3 {
        return Err(HymError::TooLarge {
            n,
            d: 2,
            max_n: 3,
            max_d: 2,
        });
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let scale = a.max_norm();
    if scale == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let m = a.scale(&(1.0 / scale));
    let g = |r: usize, c: usize| *m.get(r, c);
    // monic characteristic polynomial, highest degree first after the 1
    let coeffs: Vec<f64> = match n {
        1 => vec![-g(0, 0)],
        2 => vec![-(g(0, 0) + g(1, 1)), g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)],
        _ => {
            let tr = g(0, 0) + g(1, 1) + g(2, 2);
            let minors = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2)
                - g(0, 2) * g(2, 0)
                + g(1, 1) * g(2, 2)
                - g(1, 2) * g(2, 1);
            vec![-tr, minors, -m.det()?]
        }
    };
    let mut roots = match n {
        1 => vec![Complex64::new(-coeffs[0], 0.0)],
        2 => quadratic_roots(coeffs[0], coeffs[1]),
        _ => cubic_roots(coeffs[0], coeffs[1], coeffs[2]),
    };
    let eval = |z: Complex64| {
        let (mut p, mut dp) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        for &c in &coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*z);
            if dp.norm() < 1e-6 {
                break;
            }
            *z -= p / dp;
        }
    }
    Ok(roots.into_iter().map(|z| z * scale).collect())
}

fn quadratic_roots(b: f64, c: f64) -> Vec<Complex64> {
    let disc = Complex64::new(b * b - 4.0 * c, 0.0).sqrt();
    vec![(-b + disc) / 2.0, (-b - disc) / 2.0]
}

/// Roots of `z^3 + b z^2 + c z + d` by Cardano's method.
fn cubic_roots(b: f64, c: f64, d: f64) -> Vec<Complex64> {
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = Complex64::new(q * q / 4.0 + p * p * p / 27.0, 0.0).sqrt();
    let mut u3 = Complex64::new(-q / 2.0, 0.0) + disc;
    if u3.norm() < 1e-14 {
        u3 = Complex64::new(-q / 2.0, 0.0) - disc;
    }
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    if u3.norm() < 1e-14 {
        return vec![Complex64::new(-shift, 0.0); 3];
    }
    let u = u3.powf(1.0 / 3.0);
    (0..3)
        .map(|k| {
            let uk = u * omega.powu(k);
            let vk = Complex64::new(-p / 3.0, 0.0) / uk;
            uk + vk - shift
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: Status,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub signature: GlSignature,
    pub seed: u64,
    pub axioms: Vec<AxiomResult>,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.status == Status::Pass)
    }
}

pub const DEFAULT_GROUP_TRIPLES: usize = 100;

/// Samples closure, identity, inverse and associativity checks over the
/// given members of `GL(sig)`.
pub fn check_group_axioms<T: Scalar>(
    sig: &GlSignature,
    samples: &[Hypermatrix<T>],
    seed: u64,
) -> Result<GroupReport> {
    check_group_axioms_with(sig, samples, seed, DEFAULT_GROUP_TRIPLES)
}

pub fn check_group_axioms_with<T: Scalar>(
    sig: &GlSignature,
    samples: &[Hypermatrix<T>],
    seed: u64,
    triples: usize,
) -> Result<GroupReport> {
    if samples.is_empty() {
        return Err(HymError::NotMember(0));
    }
    if let Some(i) = samples.iter().position(|a| !gl_contains(sig, a)) {
        return Err(HymError::NotMember(i + 1));
    }
    let j = sig.identity::<T>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..samples.len());
    let result = |axiom: &str, checks: usize, witness: Option<String>| AxiomResult {
        axiom: axiom.into(),
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        checks,
        witness,
        seed,
    };

    let mut witness = None;
    for _ in 0..triples {
        let (x, y) = (pick(&mut rng), pick(&mut rng));
        let c = stph(&samples[x], &samples[y]);
        if !gl_contains(sig, &c) {
            witness = Some(format!("samples {} and {}: product {} leaves the group", x + 1, y + 1, c.shape()));
            break;
        }
    }
    let closure = result("closure", triples, witness);

    let mut witness = None;
    for (i, a) in samples.iter().enumerate() {
        if !stph(a, &j).approx_eq(a) || !stph(&j, a).approx_eq(a) {
            witness = Some(format!("sample {}: J is not a two-sided identity", i + 1));
            break;
        }
    }
    let identity = result("identity", samples.len(), witness);

    let mut witness = None;
    for (i, a) in samples.iter().enumerate() {
        let inv = inverse(a)?;
        if !gl_contains(sig, &inv) || !stph(a, &inv).approx_eq(&j) || !stph(&inv, a).approx_eq(&j) {
            witness = Some(format!("sample {}: inverse fails A ⊛ A^-1 = A^-1 ⊛ A = J", i + 1));
            break;
        }
    }
    let inverses = result("inverse", samples.len(), witness);

    let mut witness = None;
    for _ in 0..triples {
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (a, b, c) = (&samples[x], &samples[y], &samples[z]);
        if !stph(a, &stph(b, c)).approx_eq(&stph(&stph(a, b), c)) {
            witness = Some(format!("samples ({}, {}, {})", x + 1, y + 1, z + 1));
            break;
        }
    }
    let assoc = result("associativity", triples, witness);

    Ok(GroupReport {
        signature: sig.clone(),
        seed,
        axioms: vec![closure, identity, inverses, assoc],
    })
}

/// With `B = T^{-1} ⊛ A ⊛ T`, checks that `W = T^{(k)}` conjugates both
/// `A^{(k)}` to `B^{(k)}` and `A^{[k]}` to `B^{[k]}`.
pub fn compounds_preserve_similarity<T: Scalar>(
    a: &Hypermatrix<T>,
    b: &Hypermatrix<T>,
    t: &Hypermatrix<T>,
    k: usize,
) -> Result<bool> {
    let w = mult_compound_hyper(t, k)?;
    let w_inv = inverse(&w)?;
    let conj = |x: &Hypermatrix<T>| stph(&stph(&w_inv, x), &w);
    let mult_ok = conj(&mult_compound_hyper(a, k)?).approx_eq(&mult_compound_hyper(b, k)?);
    let add_ok = conj(&add_compound_hyper(a, k)?).approx_eq(&add_compound_hyper(b, k)?);
    Ok(mult_ok && add_ok)
}
