use exact_arith::{random_fp, Fp, Ring};
use matrix_core::RingMatrix;
use model_seeds::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use staircase_core::{phi1_star, validate_shape, Derived};

fn rng(s: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(s)
}

fn rand_mat(n: usize, r: &mut ChaCha8Rng) -> RingMatrix<Fp> {
    RingMatrix::from_fn(n, n, |_, _| random_fp(r))
}

#[test]
fn double_n4_shape() {
    let (x, y) = random_double(4, &mut rng(1));
    let s = build_sigma_double(4, &x, &y).unwrap();
    let q = &s.seed.quiver;
    assert_eq!(q.len(), 32);
    assert_eq!(q.isolated().len(), 3);
    assert_eq!(q.frozen_count(), 11);
    assert_eq!(q.mult(s.special), 4);
    assert_eq!(s.special, s.id(Coord::Grid(2, 1)));
    // h22 is det Ȳ
    assert_eq!(s.value(Coord::Grid(2, 2)), &y.submatrix(&[2, 3, 4], &[2, 3, 4]).unwrap().det().unwrap());
}

#[test]
fn double_special_mutation_gives_phi1_star() {
    let mut r = rng(2);
    for n in [3, 4, 5] {
        let (x, y) = random_double(n, &mut r);
        let s = build_sigma_double(n, &x, &y).unwrap();
        let st = validate_shape(n, n, 0, x, y).unwrap();
        let star = phi1_star(&st, &Derived::new(&st).unwrap()).unwrap();
        assert_eq!(s.seed.generalized_exchange(s.special).unwrap(), star, "n = {n}");
    }
}

#[test]
fn band_identities_hold() {
    let mut r = rng(3);
    for (k, n) in [(3, 5), (4, 7), (2, 3), (2, 4), (2, 5), (3, 4)] {
        let a = random_band(k, n, &mut r);
        let rep = verify_band_identity(k, n, &a).unwrap();
        assert!(rep.residual.is_zero(), "({k},{n}) residual");
        assert_eq!(rep.mutated, rep.phi1_tilde_star, "({k},{n}) mutation");
        assert!(band_invariants(k, n, &a).unwrap().iter().all(|x| x.is_zero()), "({k},{n}) invariants");
    }
}

#[test]
fn band_invariants_symbolic() {
    let a = symbolic_band(3, 4);
    assert!(band_invariants(3, 4, &a).unwrap().iter().all(|x| x.is_zero()));
}

#[test]
fn band_stable_tau_monomial() {
    let mut r = rng(4);
    for (k, n) in [(3, 5), (4, 7)] {
        let a = random_band(k, n, &mut r);
        let s = build_sigma_band(k, n, &a).unwrap();
        let tau = s.seed.tau_monomials(s.special, k as u32).unwrap();
        let mut expect = a11_tilde(k, n, a.get(1, 1));
        for i in 2..=n {
            expect = expect.mul(a.get(1, i)).mul(&a.get(k + 1, i).pow((k - 1) as u64));
        }
        assert_eq!(tau.v_lt, expect, "({k},{n})");
    }
}

#[test]
fn q47_shape() {
    let a = random_band(4, 7, &mut rng(5));
    let s = build_sigma_band(4, 7, &a).unwrap();
    assert_eq!(s.seed.quiver.len(), 35);
    assert_eq!(s.seed.quiver.isolated().len(), 3);
    assert_eq!(s.seed.quiver.mult(s.special), 4);
}

#[test]
fn regular_double_n3_symbolic() {
    let (x, y) = symbolic_double(3);
    let s = build_sigma_double(3, &x, &y).unwrap();
    for c in check_regularity(&s) {
        assert!(c.divisible && c.error.is_none(), "{c:?}");
    }
}

#[test]
fn regular_bands_symbolic() {
    for (k, n) in [(2, 4), (3, 4)] {
        let a = symbolic_band(k, n);
        let s = build_sigma_band(k, n, &a).unwrap();
        for c in check_regularity(&s) {
            assert!(c.divisible && c.error.is_none(), "({k},{n}) {c:?}");
        }
    }
}

#[test]
fn regular_double_n4_on_slices() {
    let mut r = rng(6);
    for _ in 0..2 {
        let (bx, dx, ex) = (rand_mat(4, &mut r), rand_mat(4, &mut r), rand_mat(4, &mut r));
        let (by, dy, ey) = (rand_mat(4, &mut r), rand_mat(4, &mut r), rand_mat(4, &mut r));
        let x = slice_matrix(&bx, &dx, &ex);
        let y = slice_matrix(&by, &dy, &ey);
        let s = build_sigma_double(4, &x, &y).unwrap();
        let checks = check_regularity(&s);
        assert_eq!(checks.len(), 32 - 11);
        for c in checks {
            assert!(c.divisible && c.error.is_none(), "{c:?}");
        }
    }
}

#[test]
fn regular_double_n4_symbolic_minor_vertices() {
    let (x, y) = symbolic_double(4);
    let s = build_sigma_double(4, &x, &y).unwrap();
    let vs: Vec<usize> = s
        .mutable_vertices()
        .into_iter()
        .filter(|&v| !s.seed.quiver.vertex(v).label.starts_with("phi"))
        .collect();
    assert_eq!(vs.len(), 12);
    for c in check_vertices(&s, &vs) {
        assert!(c.divisible && c.error.is_none(), "{c:?}");
    }
}

#[test]
fn yz_n4_fingerprint() {
    let mut r = rng(7);
    let bands: Vec<_> = (0..3).map(|_| random_band(2, 4, &mut r)).collect();
    let rep = yz_report(4, &bands).unwrap();
    println!("{rep:?}");
    assert_eq!(rep.minor_count, 12);
    assert_eq!(rep.collected, 12);
    assert_eq!(rep.unmatched, 0);
    assert_eq!(rep.trace[0].2, Some((3, 1)));
    assert!(rep.cycles_restore.iter().all(|&b| b), "{:?}", rep.cycles_restore);
}

#[test]
fn yz_n3_symbolic() {
    let rep = yz_report(3, &[symbolic_band(2, 3)]).unwrap();
    println!("{rep:?}");
    assert_eq!(rep.collected, 6);
    assert!(rep.pass);
}

#[test]
fn gamma6_identities() {
    let mut r = rng(8);
    for _ in 0..3 {
        let (rm, sm) = (rand_mat(6, &mut r), rand_mat(6, &mut r));
        let d = build_gamma6(&rm, &sm).unwrap();
        assert!(gamma6_structure(&d).unwrap().iter().all(|x| x.is_zero()));
        assert_eq!(gamma_id_residuals(&d).unwrap(), [Fp::zero(), Fp::zero()]);
        let u = rand_mat(6, &mut r);
        assert_eq!(frozen_form_residuals(&u).unwrap(), [Fp::zero(), Fp::zero()]);
    }
}

#[test]
fn f_gamma_has_34() {
    let mut r = rng(9);
    let pts: Vec<_> = (0..3).map(|_| rand_mat(6, &mut r)).collect();
    let f = f_gamma(&pts).unwrap();
    println!("{f:?}");
    assert_eq!(f.len(), 34);
}

#[test]
fn gamma6_core_patterns() {
    assert!(gamma6_pattern_check().unwrap());
    let (r, s) = symbolic_rs();
    let d = build_gamma6(&r, &s).unwrap();
    assert!(gamma6_structure(&d).unwrap().iter().all(|x| x.is_zero()));
}

#[test]
fn yz_n4_symbolic() {
    let rep = yz_report(4, &[symbolic_band(2, 4)]).unwrap();
    assert_eq!(rep.collected, 12);
    assert_eq!(rep.recovered.len(), 12);
    assert_eq!(rep.trace[0].2, Some((3, 1)));
    assert!(rep.pass);
}

#[test]
fn top_pencil_coefficient_sign() {
    // k(n−1) odd: c_k is −a₁₁⋯a₁ₙ
    let a = random_band(3, 4, &mut rng(10));
    let s = band_staircase(3, 4, &a).unwrap();
    let c = staircase_core::pencil_coeffs(&s).unwrap();
    let prod = (1..=4).fold(Fp::one(), |acc, r| acc.mul(a.get(1, r)));
    assert_eq!(c[3], prod.neg());
}

#[test]
fn unreversed_string_breaks_regularity() {
    let a = symbolic_band(3, 4);
    let mut s = build_sigma_band(3, 4, &a).unwrap();
    let mut st = s.seed.string(s.special);
    st.reverse();
    s.seed.set_string(s.special, st).unwrap();
    let c = check_vertices(&s, &[s.special]);
    assert!(!c[0].divisible);
}
