//! Multiplicative and additive compound matrices and hypermatrices.
//!
//! Row and column indices of a `k`-compound run over `Q(n, k)`, the strictly
//! increasing `k`-subsets of `[1, n]` in lexicographic order.

use serde::{Deserialize, Serialize};

use crate::error::{HymError, Result};
use crate::field::Scalar;
use crate::hypermatrix::{Hypermatrix, SliceList};
use crate::matrix::Matrix;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1usize, |acc, i| acc * (n - k + i) / i)
}

/// An element of `Q(n, k)`, members 1-based and strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombIndex {
    n: usize,
    members: Vec<usize>,
}

impl CombIndex {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self> {
        let increasing = members.windows(2).all(|w| w[0] < w[1]);
        if !increasing || members.iter().any(|&m| m == 0 || m > n) {
            return Err(HymError::BadK {
                k: members.len(),
                bound: n,
            });
        }
        Ok(CombIndex { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// 1-based lexicographic rank in `Q(n, k)`.
    pub fn rank(&self) -> usize {
        let (n, k) = (self.n, self.members.len());
        let mut rank = 0;
        let mut prev = 0;
        for (pos, &m) in self.members.iter().enumerate() {
            for skipped in prev + 1..m {
                rank += binomial(n - skipped, k - pos - 1);
            }
            prev = m;
        }
        rank + 1
    }

    /// Inverse of [`CombIndex::rank`].
    pub fn unrank(n: usize, k: usize, rank: usize) -> Result<Self> {
        if k > n || rank == 0 || rank > binomial(n, k) {
            return Err(HymError::BadK { k, bound: n });
        }
        let mut r = rank - 1;
        let mut members = Vec::with_capacity(k);
        let mut next = 1;
        for pos in 0..k {
            loop {
                let count = binomial(n - next, k - pos - 1);
                if r < count {
                    break;
                }
                r -= count;
                next += 1;
            }
            members.push(next);
            next += 1;
        }
        Ok(CombIndex { n, members })
    }
}

/// All of `Q(n, k)` as 0-based index vectors, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

fn check_k(k: usize, bound: usize) -> Result<()> {
    if k == 0 || k > bound {
        return Err(HymError::BadK { k, bound });
    }
    Ok(())
}

/// `A^{(k)}`: all `k`-minors, rows by `Q(n, k)`, columns by `Q(m, k)`.
pub fn mult_compound_matrix<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    check_k(k, a.rows().min(a.cols()))?;
    let row_sets = combinations(a.rows(), k);
    let col_sets = combinations(a.cols(), k);
    let mut data = Vec::with_capacity(row_sets.len() * col_sets.len());
    for rs in &row_sets {
        for cs in &col_sets {
            data.push(a.submatrix(rs, cs).det()?);
        }
    }
    Matrix::new(row_sets.len(), col_sets.len(), data)
}

/// `A^{[k]}` in closed form: diagonal entries are `Σ_{i∈α} a_ii`; when `α`
/// and `β` differ in one member, `α_l ∉ β` and `β_m ∉ α`, the entry is
/// `(-1)^{l+m} a_{α_l β_m}`; all others vanish.
pub fn add_compound_matrix<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(HymError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    check_k(k, a.rows())?;
    let sets = combinations(a.rows(), k);
    let r = sets.len();
    let mut out: Matrix<T> = Matrix::zeros(r, r);
    for (ri, alpha) in sets.iter().enumerate() {
        for (ci, beta) in sets.iter().enumerate() {
            let v = if ri == ci {
                alpha
                    .iter()
                    .fold(T::zero(), |acc, &i| acc + a.get(i, i).clone())
            } else {
                let only_alpha: Vec<usize> = (0..k).filter(|&l| !beta.contains(&alpha[l])).collect();
                if only_alpha.len() != 1 {
                    continue;
                }
                let l = only_alpha[0];
                let m = (0..k)
                    .find(|&m| !alpha.contains(&beta[m]))
                    .expect("sets differ in exactly one member");
                let entry = a.get(alpha[l], beta[m]).clone();
                if (l + m) % 2 == 0 {
                    entry
                } else {
                    -entry
                }
            };
            out.set(ri, ci, v);
        }
    }
    Ok(out)
}

fn map_slices<T: Scalar>(
    a: &Hypermatrix<T>,
    f: impl Fn(&Matrix<T>) -> Result<Matrix<T>>,
) -> Result<Hypermatrix<T>> {
    let sl = a.slices()?;
    let mapped = sl.slices.iter().map(f).collect::<Result<Vec<_>>>()?;
    let (front, back) = (mapped[0].rows(), mapped[0].cols());
    SliceList::new(front, back, sl.mids, mapped)?.assemble()
}

/// Slicewise multiplicative compound, shape `C(n_1,k) x mids x C(n_d,k)`.
pub fn mult_compound_hyper<T: Scalar>(a: &Hypermatrix<T>, k: usize) -> Result<Hypermatrix<T>> {
    if a.order() < 2 {
        return Err(HymError::OrderTooLow {
            order: a.order(),
            required: 2,
        });
    }
    check_k(k, a.shape().front().min(a.shape().back()))?;
    map_slices(a, |m| mult_compound_matrix(m, k))
}

/// Slicewise additive compound of a hypersquare.
pub fn add_compound_hyper<T: Scalar>(a: &Hypermatrix<T>, k: usize) -> Result<Hypermatrix<T>> {
    if a.order() < 2 {
        return Err(HymError::OrderTooLow {
            order: a.order(),
            required: 2,
        });
    }
    if !a.shape().is_hypersquare() {
        return Err(HymError::NotHypersquare(a.dims().to_vec()));
    }
    check_k(k, a.shape().front())?;
    map_slices(a, |m| add_compound_matrix(m, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompoundMode {
    Mult,
    Add,
}

/// Products (`Mult`) or sums (`Add`) of the eigenvalues over every `α ∈ Q(n, k)`.
pub fn predict_compound_eigs<T: Scalar>(eigs: &[T], k: usize, mode: CompoundMode) -> Result<Vec<T>> {
    check_k(k, eigs.len())?;
    Ok(combinations(eigs.len(), k)
        .into_iter()
        .map(|alpha| match mode {
            CompoundMode::Mult => alpha.iter().fold(T::one(), |acc, &i| acc * eigs[i].clone()),
            CompoundMode::Add => alpha.iter().fold(T::zero(), |acc, &i| acc + eigs[i].clone()),
        })
        .collect())
}

/// `W = [v_1, ..., v_k]^{(k)}` for an `n x k` matrix of columns.
pub fn compound_eigvec<T: Scalar>(vectors: &Matrix<T>, k: usize) -> Result<Vec<T>> {
    if vectors.cols() != k {
        return Err(HymError::BadK {
            k,
            bound: vectors.cols(),
        });
    }
    Ok(mult_compound_matrix(vectors, k)?.into_data())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    fn example_3x4() -> Matrix<Q> {
        q(&[&[1, 2, -1, 4], &[-2, 0, 1, -3], &[3, 1, -2, 5]])
    }

    fn example_3x3() -> Matrix<Q> {
        q(&[&[1, 2, -1], &[-2, 0, 1], &[3, 1, -2]])
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(10, 3), 120);
    }

    #[test]
    fn rank_unrank_round_trip() {
        for n in 1..=7 {
            for k in 0..=n {
                let all = combinations(n, k);
                assert_eq!(all.len(), binomial(n, k));
                for (i, c) in all.iter().enumerate() {
                    let ci = CombIndex::new(n, c.iter().map(|x| x + 1).collect()).unwrap();
                    assert_eq!(ci.rank(), i + 1);
                    assert_eq!(CombIndex::unrank(n, k, i + 1).unwrap(), ci);
                }
            }
        }
        assert!(CombIndex::new(3, vec![2, 1]).is_err());
        assert!(CombIndex::unrank(3, 2, 4).is_err());
    }

    #[test]
    fn multiplicative_examples() {
        let a = example_3x4();
        assert_eq!(mult_compound_matrix(&a, 1).unwrap(), a);
        let a2 = mult_compound_matrix(&a, 2).unwrap();
        assert_eq!((a2.rows(), a2.cols()), (3, 6));
        assert_eq!(a2.row(0), q(&[&[4, -1, 5, 2, -6, -1]]).data());
        assert_eq!(mult_compound_matrix(&a, 3).unwrap(), q(&[&[-1, -3, 2, -3]]));
        for k in 1..=4 {
            let r = binomial(4, k);
            assert_eq!(mult_compound_matrix(&Matrix::<Q>::identity(4), k).unwrap(), Matrix::identity(r));
        }
        assert!(matches!(mult_compound_matrix(&a, 4), Err(HymError::BadK { k: 4, bound: 3 })));
        assert!(matches!(mult_compound_matrix(&a, 0), Err(HymError::BadK { .. })));
    }

    #[test]
    fn additive_examples() {
        let a = example_3x3();
        assert_eq!(add_compound_matrix(&a, 1).unwrap(), a);
        assert_eq!(
            add_compound_matrix(&a, 2).unwrap(),
            q(&[&[1, 1, 1], &[1, -1, 2], &[-3, -2, -2]])
        );
        assert_eq!(add_compound_matrix(&a, 3).unwrap(), q(&[&[-1]]));
        assert!(matches!(
            add_compound_matrix(&example_3x4(), 2),
            Err(HymError::NotSquare { .. })
        ));
    }

    #[test]
    fn hyper_compounds() {
        let data: Vec<i64> = (1..=18).map(|v| (v * 7) % 11 - 5).collect();
        let a = Hypermatrix::<Q>::from_i64(&[3, 2, 3], &data).unwrap();
        assert_eq!(mult_compound_hyper(&a, 1).unwrap(), a);
        let top = mult_compound_hyper(&a, 3).unwrap();
        assert_eq!(top.dims(), &[1, 2, 1]);
        assert_eq!(top.data(), &[a.slice(0).det().unwrap(), a.slice(1).det().unwrap()]);
        let j = Hypermatrix::<Q>::identity_hypersquare(4, &[3]).unwrap();
        assert_eq!(
            mult_compound_hyper(&j, 2).unwrap(),
            Hypermatrix::identity_hypersquare(6, &[3]).unwrap()
        );
        let e = example_3x3();
        let twin = SliceList::new(3, 3, vec![2], vec![e.clone(), e.clone()]).unwrap().assemble().unwrap();
        let t2 = add_compound_hyper(&twin, 2).unwrap();
        let expect = add_compound_matrix(&e, 2).unwrap();
        assert_eq!(t2.slice(0), expect);
        assert_eq!(t2.slice(1), expect);
        assert_eq!(add_compound_hyper(&twin, 1).unwrap(), twin);
        let rect = Hypermatrix::<Q>::zeros(&[2, 2, 3]).unwrap();
        assert!(matches!(add_compound_hyper(&rect, 1), Err(HymError::NotHypersquare(_))));
        assert!(matches!(mult_compound_hyper(&rect, 3), Err(HymError::BadK { k: 3, bound: 2 })));
    }

    #[test]
    fn eigen_predictions() {
        let qs = |v: &[i64]| v.iter().map(|&x| Q::from_i64(x)).collect::<Vec<_>>();
        assert_eq!(predict_compound_eigs(&qs(&[2, 3]), 2, CompoundMode::Mult).unwrap(), qs(&[6]));
        assert_eq!(predict_compound_eigs(&qs(&[1, 2, 3]), 2, CompoundMode::Add).unwrap(), qs(&[3, 4, 5]));
        assert!(predict_compound_eigs(&qs(&[1, 2]), 3, CompoundMode::Add).is_err());
        // the sum of all eigenvalues is the trace
        let tr = example_3x3().trace().unwrap();
        assert_eq!(tr, Q::from_i64(-1));
        assert_eq!(add_compound_matrix(&example_3x3(), 3).unwrap().data()[0], tr);
    }

    #[test]
    fn compound_eigenvectors() {
        let e12 = q(&[&[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(compound_eigvec(&e12, 2).unwrap(), q(&[&[1], &[0], &[0]]).into_data());
        let dup = q(&[&[1, 1], &[2, 2], &[3, 3]]);
        assert!(compound_eigvec(&dup, 2).unwrap().iter().all(|x| *x == Q::from_i64(0)));
        let d = Matrix::<Q>::diagonal(&[Q::from_i64(1), Q::from_i64(2), Q::from_i64(3)]);
        let d2 = mult_compound_matrix(&d, 2).unwrap();
        let lambdas = predict_compound_eigs(&[Q::from_i64(1), Q::from_i64(2), Q::from_i64(3)], 2, CompoundMode::Mult).unwrap();
        for (r, alpha) in combinations(3, 2).iter().enumerate() {
            let w = compound_eigvec(&Matrix::<Q>::identity(3).submatrix(&[0, 1, 2], alpha), 2).unwrap();
            let dw = d2.mul_vec(&w).unwrap();
            let lw: Vec<Q> = w.iter().map(|x| lambdas[r].clone() * x.clone()).collect();
            assert_eq!(dw, lw);
        }
        assert!(compound_eigvec(&e12, 1).is_err());
    }
}
