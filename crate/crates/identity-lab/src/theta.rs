//! θ-perturbations of the core. Adding θ at a few entries of a window of Φ
//! turns the three-term identity T₁ + T₂ = T₃ into a polynomial identity in θ; each
//! coefficient is a separate determinantal identity, and the one at
//! `coeff_index` is the exchange relation used in the regularity proofs.

use exact_arith::{Field, FromRational, Ring};
use matrix_core::{seg, RingMatrix};
use model_seeds::{band_staircase, SeedError};
use staircase_core::{core_minors, validate_shape};

use crate::minors::pluckpluck_terms;
use crate::{IdentityError, IdentityReport};

/// Where θ goes, which window is taken, and what to expect.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSpec {
    pub name: String,
    /// 1-based entries of the (augmented) matrix that receive +θ
    pub placements: Vec<(usize, usize)>,
    /// rows r0..=r1, columns c0..=c1; must be m×(m+1)
    pub window: (usize, usize, usize, usize),
    pub degree_bound: usize,
    pub coeff_index: usize,
}

#[derive(Clone, Debug)]
pub struct ThetaOutcome<F> {
    /// degrees of T₁, T₂, T₃ in θ, None for the zero polynomial
    pub term_degrees: [Option<usize>; 3],
    /// θ^{coeff_index} coefficients of T₁, T₂, T₃
    pub coefficients: [F; 3],
    pub coefficient_residual: F,
    pub report: IdentityReport,
}

impl<F: Ring> ThetaOutcome<F> {
    pub fn within_bound(&self, bound: usize) -> bool {
        self.term_degrees.iter().all(|d| d.map_or(true, |d| d <= bound))
    }

    /// Whether the extracted coefficient identity has any nonzero term.
    pub fn coefficient_is_nontrivial(&self) -> bool {
        self.coefficients.iter().any(|c| !c.is_zero())
    }
}

/// Coefficients c₀.. of the polynomial through (xs[i], ys[i]).
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> Result<Vec<F>, IdentityError> {
    let n = xs.len();
    let mut out = vec![F::zero(); n];
    for j in 0..n {
        let mut basis = vec![F::one()];
        let mut denom = F::one();
        for (m, xm) in xs.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = vec![F::zero(); basis.len() + 1];
            for (p, c) in basis.iter().enumerate() {
                next[p + 1] = next[p + 1].add(c);
                next[p] = next[p].sub(&c.mul(xm));
            }
            basis = next;
            denom = denom.mul(&xs[j].sub(xm));
        }
        let scale = ys[j].div(&denom)?;
        for (p, c) in basis.iter().enumerate() {
            out[p] = out[p].add(&c.mul(&scale));
        }
    }
    Ok(out)
}

fn degree<F: Ring>(c: &[F]) -> Option<usize> {
    c.iter().rposition(|x| !x.is_zero())
}

/// Interpolate T₁, T₂, T₃ and the residual in θ from `degree_bound + 4`
/// points; the residual must vanish identically.
pub fn theta_exchange_check<F: Field + FromRational>(
    phi: &RingMatrix<F>,
    spec: &PerturbationSpec,
) -> Result<ThetaOutcome<F>, IdentityError> {
    let (r0, r1, c0, c1) = spec.window;
    if r0 == 0 || c0 == 0 || r1 > phi.rows() || c1 > phi.cols() || c1 + 1 - c0 != r1 + 2 - r0 {
        return Err(IdentityError::DimensionMismatch(format!(
            "window {:?} is not m x (m+1) inside {}x{}",
            spec.window,
            phi.rows(),
            phi.cols()
        )));
    }
    let npts = spec.degree_bound + 4;
    let xs: Vec<F> = (1..=npts as i64).map(F::from_i64).collect();
    let mut vals: [Vec<F>; 3] = Default::default();
    for th in &xs {
        let mut m = phi.clone();
        for &(i, j) in &spec.placements {
            m.set(i, j, m.get(i, j).add(th));
        }
        let b = m.submatrix(&seg(r0, r1), &seg(c0, c1))?;
        let t = pluckpluck_terms(&b)?;
        for (v, ti) in vals.iter_mut().zip(t) {
            v.push(ti);
        }
    }
    let polys = [
        interpolate(&xs, &vals[0])?,
        interpolate(&xs, &vals[1])?,
        interpolate(&xs, &vals[2])?,
    ];
    let residual: Vec<F> = (0..npts).map(|i| polys[0][i].add(&polys[1][i]).sub(&polys[2][i])).collect();
    if let Some(d) = degree(&residual) {
        return Err(IdentityError::NonzeroResidual {
            coeff: d,
            value: residual[d].to_string(),
        });
    }
    let ci = spec.coeff_index;
    let coefficients = [polys[0][ci].clone(), polys[1][ci].clone(), polys[2][ci].clone()];
    let coefficient_residual = coefficients[0].add(&coefficients[1]).sub(&coefficients[2]);
    let report = IdentityReport::new("theta", spec.name.clone(), &coefficient_residual);
    Ok(ThetaOutcome {
        term_degrees: [degree(&polys[0]), degree(&polys[1]), degree(&polys[2])],
        coefficients,
        coefficient_residual,
        report,
    })
}

fn double_core<F: Ring>(n: usize, x: &RingMatrix<F>, y: &RingMatrix<F>) -> Result<RingMatrix<F>, IdentityError> {
    let s = validate_shape(n, n, 0, x.clone(), y.clone())?;
    Ok(core_minors(&s)?.phi_matrix)
}

/// Double, middle φ_i (n+1 ≤ i ≤ N−1): Φ gets a leading column
/// (x_{2n}, …, x_{nn}, 0, …)ᵀ, θ goes to Φ entry ((n−1)²+1, (n−1)²−1), and
/// the window is rows i−n..N, columns i−n−1..N of Φ (column 0 being the
/// new one). Degree ≤ 3, exchange at θ¹.
pub fn double_phi_fixture<F: Ring>(
    n: usize,
    x: &RingMatrix<F>,
    y: &RingMatrix<F>,
    i: usize,
) -> Result<(RingMatrix<F>, PerturbationSpec), IdentityError> {
    let big_n = n * (n - 1);
    if n < 3 || i < n + 1 || i > big_n - 1 {
        return Err(IdentityError::IndexInvalid(format!("phi_{i} for n = {n}")));
    }
    let phi = double_core(n, x, y)?;
    let m = RingMatrix::from_fn(big_n, big_n + 1, |r, c| {
        if c == 1 {
            if r < n { x.get(r + 1, n).clone() } else { F::zero() }
        } else {
            phi.get(r, c - 1).clone()
        }
    });
    let sq = (n - 1) * (n - 1);
    let spec = PerturbationSpec {
        name: format!("double n={n} phi_{i}"),
        placements: vec![(sq + 1, sq)],
        window: (i - n, big_n, i - n, big_n + 1),
        degree_bound: 3,
        coeff_index: 1,
    };
    Ok((m, spec))
}

/// Double, h_ii (3 ≤ i ≤ n): Φ gets two copies of e_N appended, θ goes to
/// (n−1, n+1) and (N−1, N+2), and the window is rows i−2..N, columns
/// i−1..N+2. Degree ≤ 4, exchange at θ².
pub fn double_h_fixture<F: Ring>(
    n: usize,
    x: &RingMatrix<F>,
    y: &RingMatrix<F>,
    i: usize,
) -> Result<(RingMatrix<F>, PerturbationSpec), IdentityError> {
    let big_n = n * (n - 1);
    if n < 3 || i < 3 || i > n {
        return Err(IdentityError::IndexInvalid(format!("h_{i}{i} for n = {n}")));
    }
    let phi = double_core(n, x, y)?;
    let m = RingMatrix::from_fn(big_n, big_n + 2, |r, c| {
        if c <= big_n {
            phi.get(r, c).clone()
        } else if r == big_n {
            F::one()
        } else {
            F::zero()
        }
    });
    let spec = PerturbationSpec {
        name: format!("double n={n} h_{i}{i}"),
        placements: vec![(n - 1, n + 1), (big_n - 1, big_n + 2)],
        window: (i - 2, big_n, i - 1, big_n + 2),
        degree_bound: 4,
        coeff_index: 2,
    };
    Ok((m, spec))
}

/// Band (k ≥ 3), vertex (i, j) with 2 ≤ j < k: θ goes to
/// ((k−2)(n−1)+q, (k−2)(n−1)+q−2) for q = 1..n−1, the window is rows
/// r₀..m and columns r₀−1..m with r₀ = (k−j−1)(n−1)+i−1, m = (k−1)(n−1).
/// Degree ≤ 3(n−1), exchange at θ^{n−1}.
pub fn band_fixture<F: Ring>(
    k: usize,
    n: usize,
    a: &RingMatrix<F>,
    i: usize,
    j: usize,
) -> Result<(RingMatrix<F>, PerturbationSpec), IdentityError> {
    if k < 3 || j < 2 || j >= k || i == 0 || i >= n {
        return Err(IdentityError::IndexInvalid(format!("band ({k},{n}) vertex ({i},{j})")));
    }
    let s = band_staircase(k, n, a).map_err(|e: SeedError| IdentityError::Seed(e))?;
    let phi = core_minors(&s)?.phi_matrix;
    let m = (k - 1) * (n - 1);
    let r0 = (k - j - 1) * (n - 1) + i - 1;
    if r0 < 2 {
        return Err(IdentityError::IndexInvalid(format!("band ({k},{n}) vertex ({i},{j}) has no window")));
    }
    let base = (k - 2) * (n - 1);
    let spec = PerturbationSpec {
        name: format!("band ({k},{n}) vertex ({i},{j})"),
        placements: (1..n).map(|q| (base + q, base + q - 2)).collect(),
        window: (r0, m, r0 - 1, m),
        degree_bound: 3 * (n - 1),
        coeff_index: n - 1,
    };
    Ok((phi, spec))
}
