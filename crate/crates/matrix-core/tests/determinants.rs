use exact_arith::{poly_eval, random_assignment, random_fp, Fp, Poly, Rational, Ring};
use matrix_core::RingMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_fp_matrix(n: usize, rng: &mut ChaCha8Rng) -> RingMatrix<Fp> {
    RingMatrix::from_fn(n, n, |_, _| random_fp(rng))
}

fn symbolic(n: usize) -> RingMatrix<Poly<Rational>> {
    RingMatrix::from_fn(n, n, |i, j| Poly::var(((i - 1) * n + j - 1) as u32))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_fp_matrix(n, &mut rng);
        let b = random_fp_matrix(n, &mut rng);
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap().mul(&b.det().unwrap()));
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }

    #[test]
    fn every_row_expansion_agrees(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_fp_matrix(n, &mut rng);
        let d = a.det().unwrap();
        for i in 1..=n {
            prop_assert_eq!(a.det_along_row(i).unwrap(), d);
        }
        prop_assert_eq!(a.det_laplace().unwrap(), d);
        prop_assert_eq!(a.det_bareiss().unwrap(), d);
    }

    #[test]
    fn integer_matrices_match_cofactor_oracle(entries in prop::collection::vec(-9i64..10, 16)) {
        let a = RingMatrix::from_fn(4, 4, |i, j| Rational::from_i64(entries[(i - 1) * 4 + j - 1]));
        let d = a.det_cofactor().unwrap();
        prop_assert_eq!(a.det().unwrap(), d.clone());
        prop_assert_eq!(a.det_bareiss().unwrap(), d);
    }

    #[test]
    fn product_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_fp_matrix(3, &mut rng);
        let b = random_fp_matrix(3, &mut rng);
        let c = random_fp_matrix(3, &mut rng);
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a.clone());
        prop_assert_eq!(a.matmul(&RingMatrix::identity(3)).unwrap(), a);
    }
}

#[test]
fn symbolic_bareiss_matches_cofactor_up_to_four() {
    for n in 1..=4 {
        let m = symbolic(n);
        let d = m.det_cofactor().unwrap();
        assert_eq!(m.det_bareiss().unwrap(), d, "n = {n}");
        assert_eq!(m.det_laplace().unwrap(), d, "n = {n}");
    }
    assert_eq!(symbolic(4).det_bareiss().unwrap().num_terms(), 24);
}

#[test]
fn symbolic_det_evaluates_to_numeric_det() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = symbolic(3).det().unwrap();
    for _ in 0..10 {
        let at = random_assignment(&(0..9).collect::<Vec<_>>(), &mut rng);
        let numeric = RingMatrix::from_fn(3, 3, |i, j| at[&(((i - 1) * 3 + j - 1) as u32)]);
        assert_eq!(poly_eval(&d, &at).unwrap(), numeric.det().unwrap());
    }
}

#[test]
fn random_inverse_multiplies_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let a = random_fp_matrix(5, &mut rng);
        let ai = a.inverse().unwrap();
        assert_eq!(a.matmul(&ai).unwrap(), RingMatrix::identity(5));
        assert_eq!(ai.matmul(&a).unwrap(), RingMatrix::identity(5));
    }
    let i4 = RingMatrix::<Fp>::identity(4);
    assert_eq!(i4.inverse().unwrap(), i4);
}
