use exact_arith::{random_fp, Fp, Poly, Rational, Ring};
use identity_lab::*;
use matrix_core::RingMatrix;
use model_seeds::{random_band, random_double};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Poly<Rational>;

fn rand_mat(r: usize, c: usize, rng: &mut ChaCha8Rng) -> RingMatrix<Fp> {
    RingMatrix::from_fn(r, c, |_, _| random_fp(rng))
}

fn sym_mat(r: usize, c: usize, offset: u32) -> RingMatrix<P> {
    RingMatrix::from_fn(r, c, |i, j| P::var(offset + ((i - 1) * c + j - 1) as u32))
}

#[test]
fn jacobi_random_and_singular() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let n = rng.gen_range(2..=6);
        let mut a = rand_mat(n, n, &mut rng);
        if rng.gen_bool(0.2) {
            for j in 1..=n {
                a.set(n, j, a.get(1, j).clone());
            }
        }
        let pick2 = |rng: &mut ChaCha8Rng| loop {
            let (p, q) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            if p != q {
                break (p, q);
            }
        };
        let (al, be) = pick2(&mut rng);
        let (ga, de) = pick2(&mut rng);
        assert!(desnanot_jacobi_residual(&a, al, be, ga, de).unwrap().is_zero());
    }
}

#[test]
fn jacobi_symbolic_4x4() {
    let a = sym_mat(4, 4, 0);
    assert!(desnanot_jacobi_residual(&a, 1, 3, 2, 4).unwrap().is_zero());
    assert!(desnanot_jacobi_residual(&a, 1, 4, 1, 4).unwrap().is_zero());
}

#[test]
fn plucker_random_and_zero_row() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in 0..500 {
        let m = rng.gen_range(2..=6);
        let mut b = rand_mat(m, m + 1, &mut rng);
        let mut cols: Vec<usize> = (1..=m + 1).collect();
        for i in 0..3 {
            let j = rng.gen_range(i..cols.len());
            cols.swap(i, j);
        }
        let de = rng.gen_range(1..=m);
        if t % 10 == 0 && m > 2 {
            let z = if de == 1 { 2 } else { 1 };
            for j in 1..=m + 1 {
                b.set(z, j, Fp::zero());
            }
        }
        assert!(plucker_residual(&b, cols[0], cols[1], cols[2], de).unwrap().is_zero());
    }
}

#[test]
fn plucker_symbolic_3x4() {
    let b = sym_mat(3, 4, 0);
    for de in 1..=3 {
        assert!(plucker_residual(&b, 1, 2, 4, de).unwrap().is_zero());
        assert!(plucker_residual(&b, 2, 3, 4, de).unwrap().is_zero());
    }
}

#[test]
fn pluckpluck_random_and_symbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let m = rng.gen_range(3..=6);
        let b = rand_mat(m, m + 1, &mut rng);
        assert!(pluckpluck_residual(&b).unwrap().is_zero());
    }
    assert!(pluckpluck_residual(&sym_mat(3, 4, 0)).unwrap().is_zero());
    assert!(pluckpluck_residual(&sym_mat(4, 5, 0)).unwrap().is_zero());
}

#[test]
fn long_identity_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 2..=6 {
        for _ in 0..100 {
            let a = rand_mat(k, k, &mut rng);
            let u: Vec<Fp> = (0..k).map(|_| random_fp(&mut rng)).collect();
            let v: Vec<Fp> = (0..k).map(|_| random_fp(&mut rng)).collect();
            assert!(long_identity_residual(&a, &u, &v).unwrap().is_zero(), "k = {k}");
        }
    }
}

#[test]
fn long_identity_symbolic_k3() {
    let a = sym_mat(3, 3, 0);
    let u: Vec<P> = (9..12).map(P::var).collect();
    let v: Vec<P> = (12..15).map(P::var).collect();
    assert!(long_identity_residual(&a, &u, &v).unwrap().is_zero());
}

#[test]
fn gencop_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 2..=4 {
        for _ in 0..10 {
            let g = Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=5));
            let w = gencop_witness(k, &g, true, &mut rng).unwrap();
            assert!(w.det_k.is_zero());
            assert!(!w.det_kstar.is_zero());
            assert!(w.leading.iter().all(|m| !m.is_zero()));
            assert!(!w.a.det().unwrap().is_zero());
        }
    }
}

#[test]
fn theta_double_phi() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in [3, 4, 5] {
        let (x, y) = random_double(n, &mut rng);
        for i in n + 1..n * (n - 1) {
            let (m, spec) = double_phi_fixture(n, &x, &y, i).unwrap();
            let out = theta_exchange_check(&m, &spec).unwrap();
            assert!(out.within_bound(3), "{} {:?}", spec.name, out.term_degrees);
            assert!(out.report.pass);
            assert!(out.coefficient_is_nontrivial(), "{}", spec.name);
        }
    }
}

#[test]
fn theta_double_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3, 4, 5] {
        let (x, y) = random_double(n, &mut rng);
        for i in 3..=n {
            let (m, spec) = double_h_fixture(n, &x, &y, i).unwrap();
            let out = theta_exchange_check(&m, &spec).unwrap();
            assert!(out.within_bound(4), "{} {:?}", spec.name, out.term_degrees);
            assert!(out.coefficient_is_nontrivial(), "{}", spec.name);
        }
    }
}

#[test]
fn theta_band() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (k, n, i, j) in [(3, 5, 3, 2), (4, 7, 3, 3), (4, 5, 2, 2)] {
        let a = random_band(k, n, &mut rng);
        let (m, spec) = band_fixture(k, n, &a, i, j).unwrap();
        let out = theta_exchange_check(&m, &spec).unwrap();
        println!("{} {:?}", spec.name, out.term_degrees);
        assert!(out.within_bound(3 * (n - 1)), "{} {:?}", spec.name, out.term_degrees);
        assert!(out.coefficient_is_nontrivial(), "{}", spec.name);
    }
}
