//! Seeded property suites over exact rationals.
//!
//! Every trial draws from its own stream `trial_rng(seed, trial)`; a suite
//! reports how many trials held and the first counterexample it met.

use num::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_group_axioms, verify_eigenpair, EigenPair, GlSignature, Status};
use crate::compound::{
    add_compound_hyper, combinations, compound_eigvec, mult_compound_hyper,
    mult_compound_matrix, predict_compound_eigs, CompoundMode,
};
use crate::det::{cdet, ddet, inverse, sdet, Budget};
use crate::error::{HymError, Result};
use crate::field::Rational;
use crate::hypermatrix::{Hypermatrix, SliceList};
use crate::matrix::Matrix;
use crate::random;
use crate::stp::{stph, stph_inverse_law_check};

type Q = Rational;

pub const SUITES: [&str; 7] = [
    "assoc",
    "bilinear",
    "cauchy-binet",
    "inverse-law",
    "group",
    "compound-eig",
    "det-laws",
];

/// Size limits for random instances: outer dimensions at most `max_dim`,
/// middle volume at most `max_mid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsBudget {
    pub max_dim: usize,
    pub max_mid: usize,
}

impl Default for DimsBudget {
    fn default() -> Self {
        DimsBudget { max_dim: 4, max_mid: 4 }
    }
}

impl DimsBudget {
    pub fn from_list(dims: &[usize]) -> Result<Self> {
        match dims {
            [d, m] if *d > 0 && *m > 0 => Ok(DimsBudget { max_dim: *d, max_mid: *m }),
            [d] if *d > 0 => Ok(DimsBudget { max_dim: *d, max_mid: *d }),
            _ => Err(HymError::BadShape(format!("dims budget must be `a,b` with a, b >= 1, got {dims:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Outcome of one trial: `None` when the law held, otherwise a description.
type Trial = Result<Option<String>>;

fn run_trials(
    name: &str,
    trials: usize,
    seed: u64,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Trial,
) -> SuiteReport {
    let mut report = SuiteReport {
        suite: name.to_string(),
        seed,
        trials,
        passed: 0,
        failed: 0,
        counterexample: None,
    };
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let outcome = match trial(&mut rng) {
            Ok(o) => o,
            Err(e) => Some(format!("error: {e}")),
        };
        match outcome {
            None => report.passed += 1,
            Some(msg) => {
                report.failed += 1;
                report
                    .counterexample
                    .get_or_insert_with(|| format!("trial {t}: {msg}"));
            }
        }
    }
    report
}

/// Runs a suite by name. For `group`, `dims` is the signature `n,m1,...`
/// (default `2,2`) and `trials` is the number of sampled members; for the
/// others `dims` is a [`DimsBudget`] (default `4,4`).
pub fn run_suite(name: &str, trials: usize, seed: u64, dims: Option<&[usize]>) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(HymError::UnknownSuite(name.to_string()));
    }
    if trials == 0 {
        return Err(HymError::BadShape("trials must be at least 1".into()));
    }
    if name == "group" {
        let sig = match dims {
            None => GlSignature::new(2, vec![2])?,
            Some([]) => return Err(HymError::BadShape("empty signature".into())),
            Some([n, mids @ ..]) => GlSignature::new(*n, mids.to_vec())?,
        };
        return group(&sig, trials, seed);
    }
    let budget = match dims {
        None => DimsBudget::default(),
        Some(d) => DimsBudget::from_list(d)?,
    };
    let f: fn(&mut ChaCha8Rng, DimsBudget) -> Trial = match name {
        "assoc" => assoc_trial,
        "bilinear" => bilinear_trial,
        "cauchy-binet" => cauchy_binet_trial,
        "inverse-law" => inverse_law_trial,
        "compound-eig" => compound_eig_trial,
        "det-laws" => det_laws_trial,
        _ => unreachable!("checked against SUITES"),
    };
    Ok(run_trials(name, trials, seed, |rng| f(rng, budget)))
}

fn describe(parts: &[&Hypermatrix<Q>]) -> String {
    parts
        .iter()
        .map(|h| h.shape().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn random_hyper(rng: &mut ChaCha8Rng, b: DimsBudget) -> Hypermatrix<Q> {
    let dims = random::dims(rng, b.max_dim, b.max_mid);
    random::hypermatrix(rng, &dims)
}

pub fn assoc_trial(rng: &mut ChaCha8Rng, b: DimsBudget) -> Trial {
    let x = random_hyper(rng, b);
    let y = random_hyper(rng, b);
    let z = random_hyper(rng, b);
    let lhs = stph(&stph(&x, &y), &z);
    let rhs = stph(&x, &stph(&y, &z));
    Ok((lhs != rhs).then(|| format!("(A*B)*C != A*(B*C) for shapes {}", describe(&[&x, &y, &z]))))
}

pub fn bilinear_trial(rng: &mut ChaCha8Rng, b: DimsBudget) -> Trial {
    let x = random_hyper(rng, b);
    let shape = random::dims(rng, b.max_dim, b.max_mid);
    let y = random::hypermatrix(rng, &shape);
    let z = random::hypermatrix(rng, &shape);
    let (al, be): (Q, Q) = (random::scalar(rng), random::scalar(rng));
    let comb = y.scale(&al).add(&z.scale(&be))?;
    let left = stph(&x, &comb) == stph(&x, &y).scale(&al).add(&stph(&x, &z).scale(&be))?;
    let right = stph(&comb, &x) == stph(&y, &x).scale(&al).add(&stph(&z, &x).scale(&be))?;
    Ok(match (left, right) {
        (true, true) => None,
        _ => Some(format!(
            "linearity fails (left ok: {left}, right ok: {right}) for shapes {}",
            describe(&[&x, &y])
        )),
    })
}

pub fn cauchy_binet_trial(rng: &mut ChaCha8Rng, b: DimsBudget) -> Trial {
    let mut dim = || rng.gen_range(1..=b.max_dim);
    let (n, m, p) = (dim(), dim(), dim());
    let a: Matrix<Q> = random::matrix(rng, n, m);
    let bm: Matrix<Q> = random::matrix(rng, m, p);
    let ab = a.matmul(&bm)?;
    for k in 1..=n.min(m).min(p) {
        let lhs = mult_compound_matrix(&ab, k)?;
        let rhs = mult_compound_matrix(&a, k)?.matmul(&mult_compound_matrix(&bm, k)?)?;
        if lhs != rhs {
            return Ok(Some(format!("matrix form fails for {n}x{m} * {m}x{p}, k={k}")));
        }
    }

    let mut dim = || rng.gen_range(1..=b.max_dim);
    let (n, m, p) = (dim(), dim(), dim());
    let mids = random::mids(rng, b.max_mid);
    let da = [&[n][..], &mids, &[m]].concat();
    let db = [&[m][..], &mids, &[p]].concat();
    let x: Hypermatrix<Q> = random::hypermatrix(rng, &da);
    let y: Hypermatrix<Q> = random::hypermatrix(rng, &db);
    let xy = stph(&x, &y);
    for k in 1..=n.min(m).min(p) {
        let lhs = mult_compound_hyper(&xy, k)?;
        let rhs = stph(&mult_compound_hyper(&x, k)?, &mult_compound_hyper(&y, k)?);
        if lhs != rhs {
            return Ok(Some(format!("hypermatrix form fails for {}, k={k}", describe(&[&x, &y]))));
        }
    }
    Ok(None)
}

pub fn inverse_law_trial(rng: &mut ChaCha8Rng, b: DimsBudget) -> Trial {
    let n = rng.gen_range(1..=b.max_dim);
    let p = rng.gen_range(1..=b.max_dim);
    let ma = random::mids(rng, b.max_mid);
    let mb = random::mids(rng, b.max_mid);
    let x: Hypermatrix<Q> = random::nonsingular_hypersquare(rng, n, &ma);
    let y: Hypermatrix<Q> = random::nonsingular_hypersquare(rng, p, &mb);
    let ok = stph_inverse_law_check(&x, &y)?;
    Ok((!ok).then(|| format!("(A*B)^-1 != B^-1*A^-1 for shapes {}", describe(&[&x, &y]))))
}

fn column_hyper(n: usize, mids: &[usize], columns: Vec<Vec<Q>>) -> Result<Hypermatrix<Q>> {
    let slices = columns.into_iter().map(Matrix::column).collect();
    SliceList::new(n, 1, mids.to_vec(), slices)?.assemble()
}

/// Planted spectra: slices `V_i diag(λ_i) V_i^{-1}`. Every planted pair must
/// verify, and for each `k` and each `α` the compound eigenvectors
/// `W_α = V_i[:, α]^{(k)}` must carry the predicted products and sums.
pub fn compound_eig_trial(rng: &mut ChaCha8Rng, b: DimsBudget) -> Trial {
    let n = rng.gen_range(1..=b.max_dim.min(4));
    let mids = random::mids(rng, b.max_mid);
    let s: usize = mids.iter().product();
    let mut slices = Vec::with_capacity(s);
    let mut vs = Vec::with_capacity(s);
    let mut ls = Vec::with_capacity(s);
    for _ in 0..s {
        let (a, v, l) = random::planted_spectrum::<Q, _>(rng, n);
        slices.push(a);
        vs.push(v);
        ls.push(l);
    }
    let a = SliceList::new(n, n, mids.clone(), slices)?.assemble()?;

    for j in 0..n {
        let pair = EigenPair {
            lambdas: ls.iter().map(|l| l[j].clone()).collect(),
            vectors: column_hyper(n, &mids, vs.iter().map(|v| v.col(j)).collect())?,
        };
        if !verify_eigenpair(&a, &pair)? {
            return Ok(Some(format!("planted pair {} rejected for {}", j + 1, a.shape())));
        }
    }

    for k in 1..=n {
        let alphas = combinations(n, k);
        let r = alphas.len();
        let mult = mult_compound_hyper(&a, k)?;
        let add = add_compound_hyper(&a, k)?;
        let pm: Vec<Vec<Q>> = ls
            .iter()
            .map(|l| predict_compound_eigs(l, k, CompoundMode::Mult))
            .collect::<Result<_>>()?;
        let pa: Vec<Vec<Q>> = ls
            .iter()
            .map(|l| predict_compound_eigs(l, k, CompoundMode::Add))
            .collect::<Result<_>>()?;
        for (idx, alpha) in alphas.iter().enumerate() {
            let ws: Vec<Vec<Q>> = vs
                .iter()
                .map(|v| compound_eigvec(&v.submatrix(&(0..n).collect::<Vec<_>>(), alpha), k))
                .collect::<Result<_>>()?;
            if ws.iter().any(|w| w.iter().all(Zero::is_zero)) {
                continue;
            }
            let x = column_hyper(r, &mids, ws)?;
            let mp = EigenPair {
                lambdas: pm.iter().map(|p| p[idx].clone()).collect(),
                vectors: x.clone(),
            };
            let ap = EigenPair {
                lambdas: pa.iter().map(|p| p[idx].clone()).collect(),
                vectors: x,
            };
            if !verify_eigenpair(&mult, &mp)? {
                return Ok(Some(format!("multiplicative compound k={k}, alpha #{}", idx + 1)));
            }
            if !verify_eigenpair(&add, &ap)? {
                return Ok(Some(format!("additive compound k={k}, alpha #{}", idx + 1)));
            }
        }
    }
    Ok(None)
}

pub fn det_laws_trial(rng: &mut ChaCha8Rng, b: DimsBudget) -> Trial {
    let budget = Budget::default();
    let n = rng.gen_range(2..=3);
    let cube: Hypermatrix<Q> = random::hypermatrix(rng, &[n, n, n]);
    let c = cdet(&cube, budget)?;
    if !c.is_zero() {
        return Ok(Some(format!("cdet of {} is {c}, expected 0", cube.shape())));
    }

    let n = rng.gen_range(1..=b.max_dim.min(budget.max_n));
    let m: Hypermatrix<Q> = random::hypermatrix(rng, &[n, n]);
    let (dd, det) = (ddet(&m, budget)?, m.to_matrix()?.det()?);
    if dd != det {
        return Ok(Some(format!("ddet {dd} != det {det} for {}", m.shape())));
    }

    let h: Hypermatrix<Q> = random::hypermatrix(rng, &[2, 2, 2, 2]);
    let (dd, cd) = (ddet(&h, budget)?, cdet(&h, budget)?);
    if dd != cd {
        return Ok(Some(format!("ddet {dd} != cdet {cd} for 2x2x2x2")));
    }

    let n = rng.gen_range(1..=b.max_dim);
    let mids = random::mids(rng, b.max_mid);
    let x: Hypermatrix<Q> = random::hypermatrix(rng, &[&[n][..], &mids, &[n]].concat());
    let y: Hypermatrix<Q> = random::hypermatrix(rng, &[&[n][..], &mids, &[n]].concat());
    let (lhs, rhs) = (sdet(&stph(&x, &y))?, sdet(&x)? * sdet(&y)?);
    if lhs != rhs {
        return Ok(Some(format!("Det(A*B) = {lhs} but Det(A)Det(B) = {rhs} for {}", x.shape())));
    }

    let z: Hypermatrix<Q> = random::nonsingular_hypersquare(rng, n, &mids);
    if inverse(&inverse(&z)?)? != z {
        return Ok(Some(format!("inverse is not an involution for {}", z.shape())));
    }
    Ok(None)
}

/// Samples `members` random elements of `GL(sig)` and checks the axioms;
/// each axiom counts as one trial.
fn group(sig: &GlSignature, members: usize, seed: u64) -> Result<SuiteReport> {
    let samples: Vec<Hypermatrix<Q>> = (0..members)
        .map(|t| random::nonsingular_hypersquare(&mut random::trial_rng(seed, t as u64), sig.n, &sig.mids))
        .collect();
    let report = check_group_axioms(sig, &samples, seed)?;
    let failed: Vec<_> = report.axioms.iter().filter(|a| a.status == Status::Fail).collect();
    Ok(SuiteReport {
        suite: "group".into(),
        seed,
        trials: report.axioms.len(),
        passed: report.axioms.len() - failed.len(),
        failed: failed.len(),
        counterexample: failed.first().map(|a| {
            format!("{}: {}", a.axiom, a.witness.clone().unwrap_or_default())
        }),
    })
}
