use exact_arith::{random_assignment, random_fp, Fp, Ring};
use matrix_core::RingMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use staircase_core::symbolic::{
    detphi_residuals, evaluate_staircase, main_identity_quotient, staircase_vars,
};
use staircase_core::{
    compute_u, core_minors, pencil_coeffs, pencil_value, phi1_star, random_staircase,
    symbolic_staircase, verify_detphi_lemmas, verify_main_identity, with_resample, Derived,
};

#[test]
fn pencil_matches_determinant_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for (n, a, b) in [(4, 3, 1), (9, 5, 2), (6, 6, 0), (7, 3, 0), (5, 4, 1)] {
        for _ in 0..3 {
            let s = random_staircase(n, a, b, &mut rng).unwrap();
            let c = pencil_coeffs(&s).unwrap();
            for _ in 0..5 {
                let (l, m) = (random_fp(&mut rng), random_fp(&mut rng));
                let direct = s.y.scalar_mul(&l).add(&s.x.scalar_mul(&m)).unwrap().det().unwrap();
                assert_eq!(direct, pencil_value(&c, &l, &m, n, s.k));
            }
            let u = compute_u(&s).unwrap();
            let dy = s.y.det().unwrap();
            assert_eq!(c[0], dy);
            assert_eq!(c[s.k], dy.mul(&u.det().unwrap()));
        }
    }
}

#[test]
fn core_of_952_is_twenty_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let s = random_staircase(9, 5, 2, &mut rng).unwrap();
    let m = core_minors(&s).unwrap();
    assert_eq!(m.phi_matrix.rows(), 20);
    assert_eq!(m.phi(21), &Fp::one());
}

#[test]
fn main_identity_on_listed_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for (n, a, b) in [(9, 5, 2), (3, 3, 0), (4, 4, 0), (5, 4, 1), (5, 2, 0), (6, 2, 0)] {
        for _ in 0..4 {
            let (rep, _) = with_resample(&mut rng, |r| {
                let s = random_staircase(n, a, b, r)?;
                verify_main_identity(&s)
            })
            .unwrap();
            assert!(rep.pass, "({n},{a},{b}) residual {}", rep.residual);
        }
    }
}

#[test]
fn detphi_lemmas_numeric_952() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..4 {
        let s = random_staircase(9, 5, 2, &mut rng).unwrap();
        assert!(verify_detphi_lemmas(&s).unwrap().pass);
    }
}

#[test]
fn detphi_lemmas_symbolic_small_types() {
    for (n, a, b) in [(3, 3, 0), (3, 3, 1), (4, 3, 0)] {
        let s = symbolic_staircase(n, a, b).unwrap();
        let r = detphi_residuals(&s).unwrap();
        for (i, p) in r.iter().enumerate() {
            assert!(p.is_zero(), "({n},{a},{b}) closed form {i}: {p}");
        }
    }
}

#[test]
fn symbolic_main_quotient_is_phi1_star() {
    let s = symbolic_staircase(3, 3, 0).unwrap();
    let out = main_identity_quotient(&s).unwrap();
    let q = out.quotient.expect("phi1 divides the right-hand side");
    let vars = staircase_vars(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..5 {
        let at = random_assignment(&vars, &mut rng);
        let num = evaluate_staircase::<Fp>(&s, &at).unwrap();
        let d = Derived::new(&num).unwrap();
        let star = phi1_star(&num, &d).unwrap();
        assert_eq!(exact_arith::poly_eval(&q, &at).unwrap(), star);
    }
}

#[test]
fn zero_x_degenerates() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut s = random_staircase(5, 4, 1, &mut rng).unwrap();
    s.x = RingMatrix::zeros(5, 5);
    let c = pencil_coeffs(&s).unwrap();
    assert_eq!(c[0], s.y.det().unwrap());
    assert!(c[1..].iter().all(|x| x.is_zero()));
}
