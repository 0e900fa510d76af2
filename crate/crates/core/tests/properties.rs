//! Property tests for the quadratic form, the realification operators and
//! the complexity evaluator.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use stbc_hrqf::{
    catalog, exponent_of, fsd_exponent, fsd_exponent_with, tilde_vec, untilde_vec, ComplexMatrix, EvalMode, HrqfMatrix,
    Ordering, RealMatrix, ZeroPattern, DEFAULT_ZERO_TOL,
};

fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), rows * cols).prop_map(move |v| {
        ComplexMatrix::new(rows, cols, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
    })
}

fn close(a: &RealMatrix, b: &RealMatrix, tol: f64) -> bool {
    let scale = a.frobenius_norm().max(b.frobenius_norm()).max(1.0);
    a.sub(b).unwrap().frobenius_norm() <= tol * scale
}

fn code_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["alamouti", "silver", "abba", "fgd4x4"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quadratic_form_axioms(name in code_strategy(), seed in any::<u64>(), a in -5.0f64..5.0) {
        let m = HrqfMatrix::from_code(&catalog::builtin(name).unwrap());
        let k = m.k();
        let mut r = common::rng(seed);
        let x = common::random_vec(&mut r, k);
        let y = common::random_vec(&mut r, k);
        let z = common::random_vec(&mut r, k);
        let q = |v: &[f64]| m.evaluate_qf(v).unwrap();
        let b = |u: &[f64], v: &[f64]| m.bilinear_form(u, v).unwrap();

        let ax: Vec<f64> = x.iter().map(|v| a * v).collect();
        prop_assert!(common::rel_err(q(&ax), a * a * q(&x)) <= 1e-10);
        prop_assert!(common::rel_err(b(&x, &y), b(&y, &x)) <= 1e-10);
        prop_assert!(common::rel_err(b(&x, &x), q(&x)) <= 1e-10);
        prop_assert!(common::rel_err(b(&x, &y), m.bilinear_matrix(&x, &y).unwrap()) <= 1e-10);
        let ypz: Vec<f64> = y.iter().zip(&z).map(|(p, s)| p + a * s).collect();
        let lhs = b(&x, &ypz);
        let rhs = b(&x, &y) + a * b(&x, &z);
        let scale = q(&x).abs().max(q(&y).abs()).max(q(&z).abs()).max(1.0) * (1.0 + a.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
    }

    #[test]
    fn check_is_a_homomorphism(a in complex_matrix(3, 3), b in complex_matrix(3, 3), s in -2.0f64..2.0) {
        let prod = a.matmul(&b).unwrap().check_realify();
        prop_assert!(close(&prod, &a.check_realify().matmul(&b.check_realify()).unwrap(), 1e-12));
        let sum = a.add(&b).unwrap().check_realify();
        prop_assert!(close(&sum, &a.check_realify().add(&b.check_realify()).unwrap(), 1e-12));
        prop_assert!(close(&a.hermitian().check_realify(), &a.check_realify().transpose(), 1e-12));
        prop_assert!(close(&a.scale_real(s).check_realify(), &a.check_realify().scale(s), 1e-12));
    }

    #[test]
    fn tilde_vec_is_a_bijection(a in complex_matrix(2, 3)) {
        let v = a.vec();
        prop_assert_eq!(untilde_vec(&tilde_vec(&v)), v.clone());
        prop_assert_eq!(tilde_vec(&v).len(), 2 * v.len());
        let norm: f64 = tilde_vec(&v).iter().map(|x| x * x).sum();
        prop_assert!(common::rel_err(norm, a.frobenius_norm_sq()) <= 1e-12);
    }

    #[test]
    fn realified_product_matches_vectorization(h in complex_matrix(2, 3), x in complex_matrix(3, 3)) {
        // tilde(vec(H X)) = (I (x) check(H)) tilde(vec(X))
        let lhs = tilde_vec(&h.matmul(&x).unwrap().vec());
        let rhs = RealMatrix::identity(3).kron(&h.check_realify()).matvec(&tilde_vec(&x.vec())).unwrap();
        prop_assert!(common::vec_rel_err(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn hermitian_preserves_norm(a in complex_matrix(3, 2)) {
        prop_assert!(common::rel_err(a.hermitian().frobenius_norm_sq(), a.frobenius_norm_sq()) <= 1e-12);
        prop_assert_eq!(a.hermitian().hermitian(), a);
    }

    #[test]
    fn reorder_commutes_with_hrqf(name in code_strategy(), seed in any::<u64>()) {
        let code = catalog::builtin(name).unwrap();
        let mut perm: Vec<usize> = (0..code.k()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut common::rng(seed));
        let ord = Ordering::new(perm).unwrap();
        let direct = HrqfMatrix::from_code(&code.reorder(&ord).unwrap());
        let permuted = HrqfMatrix::from_code(&code).permute(&ord).unwrap();
        prop_assert!(close(direct.matrix(), permuted.matrix(), 1e-12));
        prop_assert_eq!(
            direct.zero_pattern(DEFAULT_ZERO_TOL),
            HrqfMatrix::from_code(&code).zero_pattern(DEFAULT_ZERO_TOL).permute(&ord).unwrap()
        );
    }

    #[test]
    fn tree_is_consistent(seed in any::<u64>()) {
        let p = common::random_pattern(seed, 1, 12);
        let (e, tree) = fsd_exponent(&p).unwrap();
        prop_assert!(e.0 >= 1 && e.0 <= p.k());
        prop_assert_eq!(exponent_of(&p), e.0);
        let paths = tree.path_costs();
        prop_assert_eq!(paths.iter().copied().max(), Some(e.0));
        for (i, j) in tree.cross_group_pairs() {
            prop_assert!(!p.get(i, j), "cross pair ({}, {}) is an edge", i, j);
        }
        let (ex, _) = fsd_exponent_with(&p, EvalMode::ExhaustiveL).unwrap();
        prop_assert!(ex <= e);
    }
}

#[test]
fn exponent_monotone_under_edge_removal() {
    for seed in 0..300 {
        let p = common::random_pattern(seed, 2, 8);
        let e = exponent_of(&p);
        for i in 0..p.k() {
            for j in i + 1..p.k() {
                if p.get(i, j) {
                    let mut q = p.clone();
                    q.set(i, j, false);
                    assert!(
                        exponent_of(&q) <= e,
                        "seed {seed}: removing ({i}, {j})\n{}",
                        p.to_grid()
                    );
                }
            }
        }
    }
}

#[test]
fn pattern_permutation_roundtrip() {
    for seed in 0..50 {
        let p = common::random_pattern(seed, 2, 10);
        let mut perm: Vec<usize> = (0..p.k()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut common::rng(seed + 1000));
        let o = Ordering::new(perm).unwrap();
        assert_eq!(p.permute(&o).unwrap().permute(&o.inverse()).unwrap(), p);
        let q = ZeroPattern::from_upper_rows(&p.to_upper_grid().lines().collect::<Vec<_>>()).unwrap();
        assert_eq!(q, p);
    }
}
