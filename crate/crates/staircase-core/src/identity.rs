use exact_arith::{Field, FromRational, Ring};
use matrix_core::RingMatrix;

use crate::krylov::k_star;
use crate::pencil::Derived;
use crate::shape::StaircaseData;
use crate::{unit, StaircaseError};

/// Sign constants of the closed forms. All three were confirmed by the
/// symbolic oracle; none needed correcting.
pub mod constants {
    use exact_arith::sign;

    /// ε₁ = (−1)^{nk(k−1)/2}
    pub fn eps1(n: usize, k: usize) -> i64 {
        sign((n * k * (k - 1) / 2) as u64)
    }

    /// ε₂ = −ε₁
    pub fn eps2(n: usize, k: usize) -> i64 {
        -eps1(n, k)
    }

    /// ε_{n+1} = (−1)^{n(k−2)(k−3)/2}
    pub fn eps_last(n: usize, k: usize) -> i64 {
        if k < 3 {
            1
        } else {
            sign((n * (k - 2) * (k - 3) / 2) as u64)
        }
    }

    /// Prefactor (−1)^{k(k−1)/2} ε₁ ε₂^k of φ₁*.
    pub fn phi_star_sign(n: usize, k: usize) -> i64 {
        let e2k = if k % 2 == 0 { 1 } else { eps2(n, k) };
        sign((k * (k - 1) / 2) as u64) * eps1(n, k) * e2k
    }
}

fn pow_apply<F: Ring>(u: &RingMatrix<F>, p: usize, v: &[F]) -> Result<Vec<F>, StaircaseError> {
    let mut v = v.to_vec();
    for _ in 0..p {
        v = u.mul_vec(&v)?;
    }
    Ok(v)
}

fn det_cols<F: Ring>(cols: &[Vec<F>]) -> Result<F, StaircaseError> {
    Ok(RingMatrix::from_columns(cols)?.det()?)
}

/// φ₁* = (−1)^{k(k−1)/2} ε₁ ε₂^k det K*(U⁻¹; e₁, v_γ) c_k^{(k−1)(k−2)}
///        (det Y₂)^{k−1} (det Ȳ)^k
pub fn phi1_star<F: Field + FromRational>(
    s: &StaircaseData<F>,
    d: &Derived<F>,
) -> Result<F, StaircaseError> {
    let k = s.k;
    if d.u.det()?.is_zero() {
        return Err(StaircaseError::Singular("U"));
    }
    let uinv = d.u.inverse()?;
    let ks = k_star(&uinv, &unit(1, k), &d.v_gamma)?.det()?;
    let ck = &d.c[k];
    let sgn = F::from_i64(constants::phi_star_sign(s.n, k));
    Ok(sgn
        .mul(&ks)
        .mul(&ck.pow(((k - 1) * (k - 2)) as u64))
        .mul(&d.det_y2.pow((k - 1) as u64))
        .mul(&d.det_ybar.pow(k as u64)))
}

/// Σ_{i=0}^{k} c_i ((−1)^{n−1} det Ȳ φ_{n+1})^i φ₂^{k−i}
pub fn main_rhs<T: Ring>(c: &[T], det_ybar: &T, phi2: &T, phi_n1: &T, n: usize) -> T {
    let k = c.len() - 1;
    let base = det_ybar.mul(phi_n1).signed((n - 1) as u64);
    let mut acc = T::zero();
    for (i, ci) in c.iter().enumerate() {
        acc = acc.add(&ci.mul(&base.pow(i as u64)).mul(&phi2.pow((k - i) as u64)));
    }
    acc
}

#[derive(Clone, Debug)]
pub struct MainReport<F> {
    pub phi1: F,
    pub phi1_star: F,
    pub rhs: F,
    pub residual: F,
    pub pass: bool,
}

/// Residual φ₁φ₁* − RHS at one point.
pub fn verify_main_identity<F: Field + FromRational>(
    s: &StaircaseData<F>,
) -> Result<MainReport<F>, StaircaseError> {
    let d = Derived::new(s)?;
    let star = phi1_star(s, &d)?;
    let m = &d.minors;
    let rhs = main_rhs(&d.c, &d.det_ybar, m.phi(2), m.phi(s.n + 1), s.n);
    let phi1 = m.phi(1).clone();
    let residual = phi1.mul(&star).sub(&rhs);
    Ok(MainReport {
        pass: residual.is_zero(),
        phi1,
        phi1_star: star,
        rhs,
        residual,
    })
}

/// Right-hand sides of the three closed forms for φ₁, φ₂, φ_{n+1}.
pub fn detphi_closed_forms<F: Field + FromRational>(
    s: &StaircaseData<F>,
    d: &Derived<F>,
) -> Result<[F; 3], StaircaseError> {
    let (n, k) = (s.n, s.k);
    let u = &d.u;
    let e1 = unit::<F>(1, k);
    let dy = &d.det_y;
    let e1_pows = |hi: usize| -> Result<Vec<Vec<F>>, StaircaseError> {
        (0..=hi).rev().map(|p| pow_apply(u, p, &e1)).collect()
    };

    // [U^{k-1}e1 ... U e1 e1]
    let f1 = F::from_i64(constants::eps1(n, k))
        .mul(&dy.pow((k - 1) as u64))
        .mul(&d.det_y2)
        .mul(&det_cols(&e1_pows(k - 1)?)?);

    // [U^{k-2}v_γ  U^{k-2}e1 ... e1]
    let mut cols = vec![pow_apply(u, k - 2, &d.v_gamma)?];
    cols.extend(e1_pows(k - 2)?);
    let f2 = F::from_i64(constants::eps2(n, k))
        .mul(&dy.pow((k - 2) as u64))
        .mul(&d.det_ybar)
        .mul(&d.det_y2)
        .mul(&det_cols(&cols)?);

    // [U^{k-2}e1  U^{k-3}v_γ  U^{k-3}e1 ... e1], with U^{k-3}v_γ taken as
    // U^{k-2}(e2 + γe1) so that k = 2 needs no inverse
    let w: Vec<F> = unit::<F>(2, k)
        .iter()
        .zip(&e1)
        .map(|(a, b)| a.add(&d.gamma.mul(b)))
        .collect();
    let mut cols = vec![pow_apply(u, k - 2, &e1)?, pow_apply(u, k - 2, &w)?];
    if k >= 3 {
        cols.extend(e1_pows(k - 3)?);
    }
    let f3 = F::from_i64(constants::eps_last(n, k))
        .mul(&dy.pow((k - 2) as u64))
        .mul(&d.det_y2)
        .mul(&det_cols(&cols)?);
    Ok([f1, f2, f3])
}

#[derive(Clone, Debug)]
pub struct DetphiReport<F> {
    /// φ₁, φ₂, φ_{n+1} minus their closed forms
    pub residuals: [F; 3],
    pub pass: bool,
}

pub fn verify_detphi_lemmas<F: Field + FromRational>(
    s: &StaircaseData<F>,
) -> Result<DetphiReport<F>, StaircaseError> {
    let d = Derived::new(s)?;
    let forms = detphi_closed_forms(s, &d)?;
    let m = &d.minors;
    let actual = [m.phi(1), m.phi(2), m.phi(s.n + 1)];
    let residuals = [
        actual[0].sub(&forms[0]),
        actual[1].sub(&forms[1]),
        actual[2].sub(&forms[2]),
    ];
    Ok(DetphiReport {
        pass: residuals.iter().all(|r| r.is_zero()),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::random_staircase;
    use exact_arith::Fp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sign_table() {
        assert_eq!(constants::eps1(3, 3), -1);
        assert_eq!(constants::eps2(3, 3), 1);
        assert_eq!(constants::eps1(4, 3), 1);
        assert_eq!(constants::eps_last(5, 4), -1);
        assert_eq!(constants::eps_last(5, 2), 1);
    }

    #[test]
    fn main_identity_and_lemmas_small_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (n, a, b) in [(3, 3, 0), (3, 3, 1), (4, 3, 0), (4, 2, 0), (5, 4, 1)] {
            let s = random_staircase(n, a, b, &mut rng).unwrap();
            assert!(verify_main_identity(&s).unwrap().pass, "main {n},{a},{b}");
            assert!(verify_detphi_lemmas(&s).unwrap().pass, "detphi {n},{a},{b}");
        }
    }

    #[test]
    fn zero_x_leaves_one_term() {
        // X = 0 makes U = 0, so only the c_0 φ₂^k term survives on the right
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut s = random_staircase(4, 3, 1, &mut rng).unwrap();
        s.x = RingMatrix::zeros(4, 4);
        let d = Derived::new(&s).unwrap();
        let rhs = main_rhs(&d.c, &d.det_ybar, d.minors.phi(2), d.minors.phi(5), 4);
        assert_eq!(rhs, d.c[0].mul(&d.minors.phi(2).pow(s.k as u64)));
        assert_eq!(d.minors.phi(1), &Fp::zero());
    }
}
