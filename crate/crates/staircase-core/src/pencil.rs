use exact_arith::{Field, FromRational, Rational, Ring};
use matrix_core::{seg, RingMatrix};

use crate::shape::{core_minors, CoreMinors, StaircaseData};
use crate::{unit, StaircaseError};

fn nonsingular<F: Field>(d: F, what: &'static str) -> Result<F, StaircaseError> {
    if d.is_zero() {
        Err(StaircaseError::Singular(what))
    } else {
        Ok(d)
    }
}

/// U = W₁₁ − Y₁Y₂⁻¹W₂₁ with W = (XY⁻¹)_{[1,a]}; U = W₁₁ when b = 0.
pub fn compute_u<F: Field>(s: &StaircaseData<F>) -> Result<RingMatrix<F>, StaircaseError> {
    let (a, b, k) = (s.a, s.b, s.k);
    nonsingular(s.y.det()?, "Y")?;
    let yinv = s.y.inverse()?;
    let w = s.x.matmul(&yinv)?;
    let w11 = w.submatrix(&seg(1, k), &seg(1, k))?;
    if b == 0 {
        return Ok(w11);
    }
    let y2 = s.y2();
    nonsingular(y2.det()?, "Y2")?;
    let w21 = w.submatrix(&seg(k + 1, a), &seg(1, k))?;
    let y1 = s.y.submatrix(&seg(1, k), &seg(1, b))?;
    let t = y1.matmul(&y2.inverse()?)?.matmul(&w21)?;
    Ok(w11.sub(&t)?)
}

/// Solve for c_0..c_d from values of Σ c_i μ^i at μ = 0..d (Lagrange form
/// with rational weights, exact in any ring that takes rationals).
fn interpolate<T: FromRational>(values: &[T]) -> Result<Vec<T>, StaircaseError> {
    let d = values.len() - 1;
    let mut coeffs = vec![T::zero(); d + 1];
    for (j, yj) in values.iter().enumerate() {
        // basis polynomial prod_{m != j} (μ - m) / (j - m), expanded
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for m in 0..=d {
            if m == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (p, c) in basis.iter().enumerate() {
                next[p + 1] = next[p + 1].add(c);
                next[p] = next[p].sub(&c.mul(&Rational::from_i64(m as i64)));
            }
            basis = next;
            denom = denom.mul(&Rational::from_i64(j as i64 - m as i64));
        }
        let dinv = denom.inv()?;
        for (p, c) in basis.iter().enumerate() {
            let w = T::from_rational(&c.mul(&dinv))?;
            coeffs[p] = coeffs[p].add(&w.mul(yj));
        }
    }
    Ok(coeffs)
}

/// c_0..c_k from det Y · det(I + μU) at μ = 0..k.
pub fn pencil_coeffs<F: Field + FromRational>(
    s: &StaircaseData<F>,
) -> Result<Vec<F>, StaircaseError> {
    let u = compute_u(s)?;
    let dy = s.y.det()?;
    let k = s.k;
    let mut values = Vec::with_capacity(k + 1);
    for mu in 0..=k {
        let m = RingMatrix::identity(k).add(&u.scalar_mul(&F::from_i64(mu as i64)))?;
        values.push(dy.mul(&m.det()?));
    }
    interpolate(&values)
}

/// c_0..c_k read off det(Y + μX) at μ = 0..k directly, without U. Works
/// over polynomial rings. One extra point confirms the pencil has degree k.
pub fn pencil_coeffs_direct<T: FromRational>(
    s: &StaircaseData<T>,
) -> Result<Vec<T>, StaircaseError> {
    let k = s.k;
    let at = |mu: usize| -> Result<T, StaircaseError> {
        let m = s.y.add(&s.x.scalar_mul(&T::from_i64(mu as i64)))?;
        Ok(if T::IS_FIELD { m.det()? } else { m.det_bareiss()? })
    };
    let values = (0..=k).map(at).collect::<Result<Vec<_>, _>>()?;
    let c = interpolate(&values)?;
    let probe = k + 1;
    let expect = pencil_value(&c, &T::one(), &T::from_i64(probe as i64), s.n, k);
    if expect != at(probe)? {
        return Err(StaircaseError::ShapeViolation(
            "det(Y + μX) has degree above k in μ".into(),
        ));
    }
    Ok(c)
}

/// λ^{n-k} Σ c_i μ^i λ^{k-i}
pub fn pencil_value<T: Ring>(c: &[T], lambda: &T, mu: &T, n: usize, k: usize) -> T {
    let mut acc = T::zero();
    for (i, ci) in c.iter().enumerate() {
        acc = acc.add(&ci.mul(&mu.pow(i as u64)).mul(&lambda.pow((k - i) as u64)));
    }
    acc.mul(&lambda.pow((n - k) as u64))
}

/// γ = det Y_{1∪[3,n]}^{[2,n]} / det Ȳ
pub fn gamma<F: Field>(y: &RingMatrix<F>) -> Result<F, StaircaseError> {
    let n = y.rows();
    let mut rows = vec![1];
    rows.extend(seg(3, n));
    let num = y.submatrix(&rows, &seg(2, n))?.det()?;
    let den = nonsingular(y.submatrix(&seg(2, n), &seg(2, n))?.det()?, "Ybar")?;
    Ok(num.div(&den)?)
}

/// Everything the closed forms and φ₁* share at one evaluation point, computed
/// once. `v_gamma` = U(e₂ + γe₁).
#[derive(Clone, Debug)]
pub struct Derived<F> {
    pub minors: CoreMinors<F>,
    pub u: RingMatrix<F>,
    pub c: Vec<F>,
    pub gamma: F,
    pub v_gamma: Vec<F>,
    pub det_y: F,
    pub det_y2: F,
    pub det_ybar: F,
}

impl<F: Field + FromRational> Derived<F> {
    pub fn new(s: &StaircaseData<F>) -> Result<Derived<F>, StaircaseError> {
        let det_y = nonsingular(s.y.det()?, "Y")?;
        let det_y2 = nonsingular(s.y2().det()?, "Y2")?;
        let det_ybar = nonsingular(s.ybar().det()?, "Ybar")?;
        let u = compute_u(s)?;
        let c = pencil_coeffs(s)?;
        let g = gamma(&s.y)?;
        let k = s.k;
        let w: Vec<F> = unit::<F>(2, k)
            .iter()
            .zip(unit::<F>(1, k))
            .map(|(e2, e1)| e2.add(&g.mul(&e1)))
            .collect();
        let v_gamma = u.mul_vec(&w)?;
        Ok(Derived {
            minors: core_minors(s)?,
            u,
            c,
            gamma: g,
            v_gamma,
            det_y,
            det_y2,
            det_ybar,
        })
    }
}
