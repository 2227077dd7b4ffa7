mod common;

use common::*;
use hym_core::hypermatrix::IndexPartition;
use hym_core::{HymError, Hypermatrix, Matrix, Permutation, Shape};
use proptest::prelude::*;

/// Entries encode their own index: `a_{ijk} = 100 i + 10 j + k`.
fn labelled_2x3x2() -> Hypermatrix<Q> {
    Hypermatrix::from_fn(&[2, 3, 2], |idx| q((100 * idx[0] + 10 * idx[1] + idx[2]) as i64)).unwrap()
}

#[test]
fn layout_of_labelled_example() {
    let a = labelled_2x3x2();
    assert_eq!(a.data()[0], q(111));
    assert_eq!(a.data()[11], q(232));
    assert_eq!(*a.get(&[2, 1, 2]).unwrap(), q(212));
    assert!(matches!(a.get(&[3, 1, 1]), Err(HymError::IndexOutOfRange { .. })));
    assert!(matches!(
        Hypermatrix::<Q>::from_dims(&[2, 2], vec![q(1); 3]),
        Err(HymError::LengthMismatch { expected: 4, actual: 3 })
    ));
    let s = hq(&[1, 1, 1], &[5]);
    assert_eq!(*s.get(&[1, 1, 1]).unwrap(), q(5));
    assert!(s.is_scalar());
}

#[test]
fn matrix_expressions_of_labelled_example() {
    let a = labelled_2x3x2();
    let m1 = a.matrix_expression(&IndexPartition::from_alpha(&[1], 3).unwrap()).unwrap();
    assert_eq!((m1.rows(), m1.cols()), (2, 6));
    assert_eq!(m1.row(0), qm(&[&[111, 112, 121, 122, 131, 132]]).data());
    let m13 = a.matrix_expression(&IndexPartition::from_alpha(&[1, 3], 3).unwrap()).unwrap();
    assert_eq!((m13.rows(), m13.cols()), (4, 3));
    assert_eq!(m13.row(0), qm(&[&[111, 121, 131]]).data());
    assert_eq!(m13.row(1), qm(&[&[112, 122, 132]]).data());
    let empty = a.matrix_expression(&IndexPartition::from_alpha(&[], 3).unwrap()).unwrap();
    let full = a.matrix_expression(&IndexPartition::from_alpha(&[1, 2, 3], 3).unwrap()).unwrap();
    assert_eq!((empty.rows(), empty.cols()), (1, 12));
    assert_eq!(full, empty.transpose());
    assert!(IndexPartition::from_alpha(&[2, 1], 3).is_err());
    assert!(IndexPartition::from_alpha(&[4], 3).is_err());
}

#[test]
fn multilinear_map_picks_columns() {
    let a = labelled_2x3x2();
    let p = IndexPartition::from_alpha(&[1], 3).unwrap();
    let mut e1 = vec![q(0); 6];
    e1[0] = q(1);
    assert_eq!(a.apply_multilinear(&p, &e1).unwrap(), vec![q(111), q(211)]);
    assert_eq!(a.apply_multilinear(&p, &vec![q(0); 6]).unwrap(), vec![q(0); 2]);
    assert!(matches!(
        a.apply_multilinear(&p, &vec![q(1); 5]),
        Err(HymError::DimensionMismatch(_))
    ));
}

#[test]
fn slices_of_order_four_follow_lexicographic_middles() {
    let a = Hypermatrix::from_fn(&[2, 2, 2, 2], |i| q((1000 * i[0] + 100 * i[1] + 10 * i[2] + i[3]) as i64)).unwrap();
    let s = a.slices().unwrap();
    assert_eq!(s.len(), 4);
    let middles = [(1, 1), (1, 2), (2, 1), (2, 2)];
    for (m, &(x, y)) in middles.iter().enumerate() {
        let base = (100 * x + 10 * y) as i64;
        assert_eq!(
            s.slices[m],
            qm(&[&[1000 + base + 1, 1000 + base + 2], &[2000 + base + 1, 2000 + base + 2]])
        );
    }
    let j = Hypermatrix::<Q>::identity_hypersquare(2, &[3]).unwrap();
    assert!(j.slices().unwrap().slices.iter().all(|m| *m == Matrix::identity(2)));
    assert!(matches!(hq(&[3], &[1, 2, 3]).slices(), Err(HymError::OrderTooLow { .. })));
}

#[test]
fn sigma_transpose_relabels_indices() {
    let a = Hypermatrix::from_fn(&[2, 2, 2], |i| q((4 * (i[0] - 1) + 2 * (i[1] - 1) + i[2]) as i64)).unwrap();
    let swap = Permutation::from_images(&[3, 2, 1]).unwrap();
    let b = a.sigma_transpose(&swap).unwrap();
    assert_eq!(b.get(&[1, 2, 2]).unwrap(), a.get(&[2, 2, 1]).unwrap());
    assert_eq!(a.sigma_transpose(&Permutation::identity(3)).unwrap(), a);
    assert!(matches!(
        a.sigma_transpose(&Permutation::identity(2)),
        Err(HymError::ArityMismatch { .. })
    ));
    let m = qm(&[&[1, 2, 3], &[4, 5, 6]]);
    let hm = Hypermatrix::from_matrix(&m);
    let t = hm.sigma_transpose(&Permutation::from_images(&[2, 1]).unwrap()).unwrap();
    assert_eq!(t.to_matrix().unwrap(), m.transpose());
}

#[test]
fn symmetry_predicates() {
    let ones = Hypermatrix::<Q>::from_fn(&[3, 3, 3], |_| q(1)).unwrap();
    assert!(ones.is_symmetric().unwrap());
    let mut data = vec![0i64; 8];
    data[0] = 1;
    assert!(!hq(&[2, 2, 2], &data).is_skew_symmetric().unwrap());
    assert!(hq(&[2, 2, 2], &[0; 8]).is_skew_symmetric().unwrap());
    assert!(matches!(hq(&[2, 3], &[0; 6]).is_symmetric(), Err(HymError::NotHypercubic(_))));
}

#[test]
fn flatten_examples() {
    let a = labelled_2x3x2();
    assert_eq!(a.flatten_pi().unwrap(), a);
    let b = hq(&[2, 2, 2, 2], &(1..=16).collect::<Vec<_>>());
    let f = b.flatten_pi().unwrap();
    assert_eq!(f.dims(), &[2, 4, 2]);
    assert_eq!(f.data(), b.data());
    assert!(matches!(hq(&[2, 2], &[1, 2, 3, 4]).flatten_pi(), Err(HymError::OrderTooLow { .. })));
}

#[test]
fn identity_hypersquares() {
    let j = Hypermatrix::<Q>::identity_hypersquare(1, &[1]).unwrap();
    assert!(j.is_scalar());
    assert_eq!(j.data(), &[q(1)]);
    let shape = Shape::new(&[2, 3, 2]).unwrap();
    assert!(shape.is_hypersquare() && !shape.is_hypercubic());
    assert_eq!(shape.to_string(), "2x3x2");
}

/// Inverts the offset formula by hand.
fn index_of(dims: &[usize], mut off: usize) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        idx[k] = off % dims[k] + 1;
        off /= dims[k];
    }
    idx
}

fn permutation_strategy(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #[test]
    fn get_agrees_with_offsets(a in hyper_q(4, 3)) {
        for off in 0..a.data().len() {
            let idx = index_of(a.dims(), off);
            prop_assert_eq!(a.get(&idx).unwrap(), &a.data()[off]);
        }
    }

    #[test]
    fn flatten_round_trips(a in hyper_q(5, 3).prop_filter("order >= 3", |a| a.order() >= 3)) {
        let mids = a.shape().mids().to_vec();
        let f = a.flatten_pi().unwrap();
        prop_assert_eq!(f.order(), 3);
        prop_assert_eq!(f.unflatten_pi(&mids).unwrap(), a);
    }

    #[test]
    fn matrix_expression_round_trips(
        (a, alpha) in hyper_q(4, 3).prop_flat_map(|a| {
            let d = a.order();
            (Just(a), prop::collection::vec(any::<bool>(), d))
        })
    ) {
        let alpha: Vec<usize> = alpha.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect();
        let p = IndexPartition::from_alpha(&alpha, a.order()).unwrap();
        let m = a.matrix_expression(&p).unwrap();
        let n_alpha: usize = alpha.iter().map(|&i| a.dims()[i - 1]).product();
        prop_assert_eq!(m.rows(), n_alpha);
        prop_assert_eq!(m.rows() * m.cols(), a.data().len());
        prop_assert_eq!(Hypermatrix::from_matrix_expression(a.dims(), &p, &m).unwrap(), a.clone());
        let x: Vec<Q> = (0..m.cols()).map(|i| q(i as i64 - 2)).collect();
        prop_assert_eq!(a.apply_multilinear(&p, &x).unwrap(), m.mul_vec(&x).unwrap());
    }

    #[test]
    fn slices_concat_to_front_expression(a in hyper_q(4, 3).prop_filter("order >= 2", |a| a.order() >= 2)) {
        let s = a.slices().unwrap();
        let p = IndexPartition::from_alpha(&[1], a.order()).unwrap();
        prop_assert_eq!(s.concat(), a.matrix_expression(&p).unwrap());
        prop_assert_eq!(s.assemble().unwrap(), a.clone());
        for (m, slice) in s.slices.iter().enumerate() {
            prop_assert_eq!(slice, &slice_by_get(&a, m));
        }
    }

    #[test]
    fn transposes_compose(
        (a, s, t) in hyper_q(4, 3).prop_flat_map(|a| {
            let d = a.order();
            (Just(a), permutation_strategy(d), permutation_strategy(d))
        })
    ) {
        // Direct relabeling: B = A^σ has B[j] = A[i] with i_{σ(k)} = j_k.
        let b = a.sigma_transpose(&s).unwrap();
        for off in 0..b.data().len() {
            let j = index_of(b.dims(), off);
            let mut i = vec![0; j.len()];
            for k in 0..j.len() {
                i[s.apply(k + 1) - 1] = j[k];
            }
            prop_assert_eq!(&b.data()[off], a.get(&i).unwrap());
        }
        let twice = b.sigma_transpose(&t).unwrap();
        prop_assert_eq!(twice, a.sigma_transpose(&s.compose(&t).unwrap()).unwrap());
        prop_assert_eq!(b.sigma_transpose(&s.inverse()).unwrap(), a);
    }

    #[test]
    fn symmetry_of_matrices_matches_the_matrix((n, data) in (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * n)))) {
        let a = hq(&[n, n], &data);
        let m = a.to_matrix().unwrap();
        prop_assert_eq!(a.is_symmetric().unwrap(), m == m.transpose());
        prop_assert_eq!(a.is_skew_symmetric().unwrap(), m == m.transpose().scale(&q(-1)));
        let sym = m.add(&m.transpose()).unwrap();
        prop_assert!(Hypermatrix::from_matrix(&sym).is_symmetric().unwrap());
        let skew = m.sub(&m.transpose()).unwrap();
        prop_assert!(Hypermatrix::from_matrix(&skew).is_skew_symmetric().unwrap());
    }

    #[test]
    fn symmetry_against_all_permutations(a in (2usize..=3).prop_flat_map(|n| hyper_with_dims(vec![n; 3]))) {
        let sym = all_permutations(3).iter().all(|p| {
            let img: Vec<usize> = p.iter().map(|x| x + 1).collect();
            a.sigma_transpose(&Permutation::from_images(&img).unwrap()).unwrap() == a
        });
        prop_assert_eq!(a.is_symmetric().unwrap(), sym);
        let symmetrized = all_permutations(3).iter().fold(Hypermatrix::zeros(a.dims()).unwrap(), |acc, p| {
            let img: Vec<usize> = p.iter().map(|x| x + 1).collect();
            acc.add(&a.sigma_transpose(&Permutation::from_images(&img).unwrap()).unwrap()).unwrap()
        });
        prop_assert!(symmetrized.is_symmetric().unwrap());
    }
}
