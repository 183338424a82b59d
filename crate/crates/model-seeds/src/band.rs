//! Periodic band matrices and their seed.
//!
//! Row r of the band carries a_{1r}, …, a_{k+1,r} on columns r−k, …, r
//! (cyclically). Entries that wrap past column 1 land in X, the others in
//! Y, which gives a staircase pair of type (n, k, 0). φ̃_i are the trailing
//! minors of the leading m×m block of the core, m = (k−1)(n−1).

use exact_arith::{random_fp, Field, Fp, FromRational, Poly, Rational, Ring};
use matrix_core::{seg, RingMatrix};
use rand_chacha::ChaCha8Rng;
use staircase_core::{core_minors, phi1_star, trailing_minors, validate_shape, Derived, StaircaseData};

use crate::double::{det, signed_pencil};
use crate::{Builder, Coord, LabeledSeed, SeedError};

/// X and Y from the (k+1)×n array a, with a.get(j, r) = a_{jr}.
pub fn band_xy<T: Ring>(k: usize, n: usize, a: &RingMatrix<T>) -> (RingMatrix<T>, RingMatrix<T>) {
    let mut x = RingMatrix::zeros(n, n);
    let mut y = RingMatrix::zeros(n, n);
    for r in 1..=n {
        for j in 1..=k + 1 {
            let c = (r + j) as i64 - k as i64 - 1;
            let v = a.get(j, r).clone();
            if c >= 1 {
                y.set(r, c as usize, v);
            } else {
                x.set(r, (c + n as i64) as usize, v);
            }
        }
    }
    (x, y)
}

fn check_params<T: Ring>(k: usize, n: usize, a: &RingMatrix<T>) -> Result<(), SeedError> {
    if k < 2 || k >= n {
        return Err(SeedError::Params(format!("band needs 2 <= k < n, got k = {k}, n = {n}")));
    }
    if a.rows() != k + 1 || a.cols() != n {
        return Err(SeedError::Params(format!("band entries must be {}x{n}", k + 1)));
    }
    for r in 1..=n {
        for j in [1, k + 1] {
            if a.get(j, r).is_zero() {
                return Err(SeedError::BandDegenerate(j, r));
            }
        }
    }
    Ok(())
}

pub fn band_staircase<T: Ring>(k: usize, n: usize, a: &RingMatrix<T>) -> Result<StaircaseData<T>, SeedError> {
    check_params(k, n, a)?;
    let (x, y) = band_xy(k, n, a);
    Ok(validate_shape(n, k, 0, x, y)?)
}

/// φ̃_1..φ̃_m, then 1.
pub fn phi_tilde<T: Ring>(s: &StaircaseData<T>) -> Result<Vec<T>, SeedError> {
    let m = (s.k - 1) * (s.n - 1);
    let core = core_minors(s)?;
    Ok(trailing_minors(&core.phi_matrix.submatrix(&seg(1, m), &seg(1, m))?)?)
}

/// ã₁₁ = (−1)^{k(n−1)} (−1)^{k(n−k)} a₁₁
pub fn a11_tilde<T: Ring>(k: usize, n: usize, a11: &T) -> T {
    a11.signed((k * (n - 1) + k * (n - k)) as u64)
}

pub fn build_sigma_band<T: FromRational>(
    k: usize,
    n: usize,
    a: &RingMatrix<T>,
) -> Result<LabeledSeed<T>, SeedError> {
    let s = band_staircase(k, n, a)?;
    let pt = phi_tilde(&s)?;
    let ct = signed_pencil(&s)?;
    let g = Coord::Grid;

    let mut b = Builder::new();
    b.vertex(g(0, 1), "a~1,1".into(), true, 1, a11_tilde(k, n, a.get(1, 1)));
    for i in 1..n {
        b.vertex(g(i, 1), format!("a1,{}", i + 1), true, 1, a.get(1, i + 1).clone());
    }
    b.vertex(g(0, k + 1), format!("a{},1", k + 1), true, 1, a.get(k + 1, 1).clone());
    for i in 1..n {
        b.vertex(g(i, k + 1), format!("a{},{}", k + 1, i + 1), true, 1, a.get(k + 1, i + 1).clone());
    }
    for j in (2..=k).rev() {
        for i in 1..n {
            let idx = (k - j) * (n - 1) + i;
            let m = if (i, j) == (1, k) { k as u32 } else { 1 };
            b.vertex(g(i, j), format!("phi~{idx}"), false, m, pt[idx - 1].clone());
        }
    }
    for i in 1..k {
        b.vertex(Coord::Iso(i), format!("c~{i}"), true, 1, ct[i].clone());
    }

    for i in 1..n - 1 {
        for j in 2..=k {
            b.edge(g(i, j), g(i + 1, j), 1);
            b.edge(g(i + 1, j), g(i, j + 1), 1);
        }
    }
    for i in 1..n {
        for j in 2..=k {
            if (i, j) != (1, k) {
                b.edge(g(i, j), g(i, j - 1), 1);
            }
        }
    }
    let mut path = vec![g(n - 1, 3)];
    for j in 2..k {
        path.push(g(1, j));
        path.push(g(n - 1, j + 2));
    }
    for w in path.windows(2) {
        b.edge(w[0], w[1], 1);
    }
    let sp = g(1, k);
    for i in 0..n {
        if k == 2 && i == 1 {
            b.edge(sp, g(i, 1), 1);
        } else {
            b.edge(g(i, 1), sp, 1);
        }
    }
    for i in 1..n {
        b.edge(g(i, k + 1), sp, k as u32 - 1);
    }
    b.edge(sp, g(0, k + 1), 1);

    let string: Vec<Coord> = (1..k).map(|r| Coord::Iso(k - r)).collect();
    b.finish(sp, &string)
}

/// Uniform band entries over F_p with the outer diagonals nonzero.
pub fn random_band(k: usize, n: usize, rng: &mut ChaCha8Rng) -> RingMatrix<Fp> {
    RingMatrix::from_fn(k + 1, n, |_, _| loop {
        let v = random_fp(rng);
        if !v.is_zero() {
            break v;
        }
    })
}

/// a_{jr} is variable (j−1)n + r − 1.
pub fn symbolic_band(k: usize, n: usize) -> RingMatrix<Poly<Rational>> {
    RingMatrix::from_fn(k + 1, n, |j, r| Poly::var(((j - 1) * n + r - 1) as u32))
}

/// Structural facts about one band instance, each a residual that should be
/// zero: the numerator of γ, c₀ − a_{k+1,1}⋯a_{k+1,n},
/// c_k − (−1)^{k(n−1)} a₁₁⋯a₁ₙ, and φ_i − φ̃_i a₁₂⋯a₁ₖ.
/// The sign on c_k is the one carried by ã₁₁; it is invisible when k(n−1)
/// is even.
pub fn band_invariants<T: FromRational>(k: usize, n: usize, a: &RingMatrix<T>) -> Result<Vec<T>, SeedError> {
    let s = band_staircase(k, n, a)?;
    let mut rows = vec![1];
    rows.extend(seg(3, n));
    let mut out = vec![det(&s.y.submatrix(&rows, &seg(2, n))?)?];
    let c = staircase_core::pencil_coeffs_direct(&s)?;
    let low = (1..=n).fold(T::one(), |acc, r| acc.mul(a.get(k + 1, r)));
    out.push(c[0].sub(&low));
    let diag = (1..=n).fold(T::one(), |acc, r| acc.mul(a.get(1, r)));
    out.push(c[k].sub(&diag.signed((k * (n - 1)) as u64)));
    let full = core_minors(&s)?;
    let pt = phi_tilde(&s)?;
    let lead = (2..=k).fold(T::one(), |acc, r| acc.mul(a.get(1, r)));
    for i in 1..=(k - 1) * (n - 1) {
        out.push(full.phi(i).sub(&pt[i - 1].mul(&lead)));
    }
    Ok(out)
}

/// φ̃₁* and both sides of the band exchange relation at one point.
#[derive(Clone, Debug)]
pub struct BandReport<F> {
    pub phi1_tilde_star: F,
    pub lhs: F,
    pub rhs: F,
    pub residual: F,
    /// value produced by mutating the seed at its special vertex
    pub mutated: F,
    pub pass: bool,
}

/// For k > 2:
///   φ̃₁φ̃₁* = a_{k+1,1} φ̃₂^k + Σ_{i=1}^{k} c̃_i (det Ȳ)^{i−1} φ̃_{n+1}^i φ̃₂^{k−i},
///   φ̃₁* = φ₁* / ((a₁₂⋯a₁ₖ)^{k−1} det Ȳ);
/// for k = 2:
///   φ̃₁φ̃₁* = a₃₁a₁₂ φ̃₂² + c̃₁ φ̃₂ + c₂ det Ȳ / a₁₂,  φ̃₁* = φ₁* / det Ȳ.
pub fn verify_band_identity<F: Field + FromRational>(
    k: usize,
    n: usize,
    a: &RingMatrix<F>,
) -> Result<BandReport<F>, SeedError> {
    let s = band_staircase(k, n, a)?;
    let d = Derived::new(&s)?;
    let star = phi1_star(&s, &d)?;
    let pt = phi_tilde(&s)?;
    let ct: Vec<F> = d.c.iter().enumerate().map(|(i, c)| c.signed((i * (n - 1)) as u64)).collect();
    let dyb = &d.det_ybar;
    let (p1, p2) = (&pt[0], &pt[1]);
    let lead = (2..=k).fold(F::one(), |acc, r| acc.mul(a.get(1, r)));
    let (star_t, rhs) = if k == 2 {
        let st = star.div(dyb)?;
        let rhs = a.get(3, 1).mul(a.get(1, 2)).mul(&p2.pow(2))
            .add(&ct[1].mul(p2))
            .add(&d.c[2].mul(dyb).div(a.get(1, 2))?);
        (st, rhs)
    } else {
        let st = star.div(&lead.pow((k - 1) as u64).mul(dyb))?;
        let pn1 = &pt[n];
        let mut rhs = a.get(k + 1, 1).mul(&p2.pow(k as u64));
        for i in 1..=k {
            rhs = rhs.add(
                &ct[i]
                    .mul(&dyb.pow((i - 1) as u64))
                    .mul(&pn1.pow(i as u64))
                    .mul(&p2.pow((k - i) as u64)),
            );
        }
        (st, rhs)
    };
    let lhs = p1.mul(&star_t);
    let seed = build_sigma_band(k, n, a)?;
    let mutated = seed.seed.generalized_exchange(seed.special)?;
    let residual = lhs.sub(&rhs);
    Ok(BandReport {
        pass: residual.is_zero() && mutated == star_t,
        phi1_tilde_star: star_t,
        lhs,
        rhs,
        residual,
        mutated,
    })
}
