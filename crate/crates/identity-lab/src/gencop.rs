//! Witnesses A = C⁻¹ diag(t, t², …, t^k) C with det K(A; e₁) = 0 but
//! det K*(A; e₁, A⁻¹(e₂ + γe₁)) ≠ 0.
//!
//! c₁₁ = 0 kills det K. c_{i1} (i ≥ 2), c₁₂ and c₂₂ + γc₂₁ are kept nonzero,
//! and for t large the j = 2 term dominates every w_i, so det K* ≠ 0. The
//! strengthened form also asks for nonzero leading principal minors, whose
//! leading terms in t are det C_{K}^{I} det C_{K^c}^{I^c} with K the last |I|
//! indices; C is drawn until those are nonzero.

use exact_arith::{Field, FromRational, Ring};
use matrix_core::{seg, RingMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use staircase_core::{k_star, krylov, unit};

use crate::IdentityError;

/// t runs through 2, 4, 8, … and gives up after this many doublings.
pub const MAX_ESCALATIONS: usize = 24;

const C_DRAWS: usize = 200;

#[derive(Clone, Debug)]
pub struct WitnessCheck<F> {
    pub a: RingMatrix<F>,
    pub c: RingMatrix<F>,
    pub t: F,
    pub det_k: F,
    pub det_kstar: F,
    pub leading: Vec<F>,
    pub escalations: usize,
}

impl<F: Ring> WitnessCheck<F> {
    pub fn holds(&self, strengthened: bool) -> bool {
        self.det_k.is_zero()
            && !self.det_kstar.is_zero()
            && (!strengthened || self.leading.iter().all(|m| !m.is_zero()))
    }
}

pub fn leading_minors<F: Field>(a: &RingMatrix<F>) -> Result<Vec<F>, IdentityError> {
    (1..=a.rows())
        .map(|i| Ok(a.submatrix(&seg(1, i), &seg(1, i))?.det()?))
        .collect()
}

fn small<F: Ring>(rng: &mut ChaCha8Rng, nonzero: bool) -> F {
    loop {
        let v: i64 = rng.gen_range(-9..=9);
        if !nonzero || v != 0 {
            return F::from_i64(v);
        }
    }
}

fn complement(set: &[usize], k: usize) -> Vec<usize> {
    (1..=k).filter(|i| !set.contains(i)).collect()
}

fn draw_c<F: Field>(k: usize, gamma: &F, strengthened: bool, rng: &mut ChaCha8Rng) -> Result<Option<RingMatrix<F>>, IdentityError> {
    let mut c = RingMatrix::from_fn(k, k, |_, _| small::<F>(rng, false));
    c.set(1, 1, F::zero());
    for i in 2..=k {
        c.set(i, 1, small(rng, true));
    }
    c.set(1, 2, small(rng, true));
    while c.get(2, 2).add(&gamma.mul(c.get(2, 1))).is_zero() {
        c.set(2, 2, small(rng, false));
    }
    if c.det()?.is_zero() {
        return Ok(None);
    }
    if strengthened {
        for size in 1..k {
            let rows = seg(1, size);
            let top = seg(k - size + 1, k);
            let a = c.submatrix(&top, &rows)?.det()?;
            let b = c.submatrix(&complement(&top, k), &complement(&rows, k))?.det()?;
            if a.is_zero() || b.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(c))
}

fn evaluate<F: Field>(c: &RingMatrix<F>, cinv: &RingMatrix<F>, t: &F, gamma: &F) -> Result<WitnessCheck<F>, IdentityError> {
    let k = c.rows();
    let mut d = RingMatrix::zeros(k, k);
    for i in 1..=k {
        d.set(i, i, t.pow(i as u64));
    }
    let a = cinv.matmul(&d)?.matmul(c)?;
    let e1 = unit::<F>(1, k);
    let w: Vec<F> = unit::<F>(2, k).iter().zip(&e1).map(|(x, y)| x.add(&gamma.mul(y))).collect();
    let v = a.inverse()?.mul_vec(&w)?;
    let det_k = krylov(&a, &e1, &v)?.k.det()?;
    let det_kstar = k_star(&a, &e1, &v)?.det()?;
    Ok(WitnessCheck {
        leading: leading_minors(&a)?,
        a,
        c: c.clone(),
        t: t.clone(),
        det_k,
        det_kstar,
        escalations: 0,
    })
}

pub fn gencop_witness<F: Field + FromRational>(
    k: usize,
    gamma: &F,
    strengthened: bool,
    rng: &mut ChaCha8Rng,
) -> Result<WitnessCheck<F>, IdentityError> {
    if k < 2 {
        return Err(IdentityError::DimensionMismatch(format!("need k >= 2, got {k}")));
    }
    let mut c = None;
    for _ in 0..C_DRAWS {
        c = draw_c(k, gamma, strengthened, rng)?;
        if c.is_some() {
            break;
        }
    }
    let c = c.ok_or(IdentityError::WitnessSearchFailed(k, 0))?;
    let cinv = c.inverse()?;
    let two = F::from_i64(2);
    let mut t = two.clone();
    for esc in 0..MAX_ESCALATIONS {
        let mut w = evaluate(&c, &cinv, &t, gamma)?;
        w.escalations = esc;
        if w.holds(strengthened) {
            return Ok(w);
        }
        t = t.mul(&two);
    }
    Err(IdentityError::WitnessSearchFailed(k, MAX_ESCALATIONS))
}
