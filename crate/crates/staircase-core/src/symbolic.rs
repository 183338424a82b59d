//! Polynomial forms of the φ closed forms and the main identity.
//!
//! U has denominators, so it is replaced by Ũ = det Y · det Y₂ · U, which is
//! a polynomial matrix, and every identity is multiplied through by the
//! matching power of D = det Y · det Y₂. Common factors of D on both sides
//! are cancelled before expanding; the residual is identically zero exactly
//! when the rational identity holds.

use exact_arith::{poly_eval, ArithError, FromRational, Poly, Rational, Ring, VarAssignment};
use matrix_core::{seg, RingMatrix};

use crate::identity::{constants, main_rhs};
use crate::pencil::pencil_coeffs_direct;
use crate::shape::{core_minors, CoreMinors, StaircaseData};
use crate::{unit, StaircaseError};

type P = Poly<Rational>;

/// Classical adjoint, adj(M)·M = det(M)·I.
pub fn adjugate(m: &RingMatrix<P>) -> Result<RingMatrix<P>, StaircaseError> {
    let n = m.rows();
    if n == 0 {
        return Ok(RingMatrix::zeros(0, 0));
    }
    let mut out = RingMatrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            let c = m.delete(&[j], &[i])?.det_laplace()?;
            out.set(i, j, c.signed((i + j) as u64));
        }
    }
    Ok(out)
}

/// The polynomial ingredients shared by all symbolic checks.
pub struct SymbolicParts {
    pub minors: CoreMinors<P>,
    pub det_y: P,
    pub det_y2: P,
    pub det_ybar: P,
    /// numerator of γ, det Y_{1∪[3,n]}^{[2,n]}
    pub gamma_num: P,
    /// Ũ = det Y · det Y₂ · U
    pub u_tilde: RingMatrix<P>,
}

impl SymbolicParts {
    pub fn new(s: &StaircaseData<P>) -> Result<SymbolicParts, StaircaseError> {
        let (n, a, b, k) = (s.n, s.a, s.b, s.k);
        let det_y = s.y.det_laplace()?;
        let y2 = s.y2();
        let det_y2 = y2.det_laplace()?;
        let det_ybar = s.ybar().det_laplace()?;
        let mut rows = vec![1];
        rows.extend(seg(3, n));
        let gamma_num = s.y.submatrix(&rows, &seg(2, n))?.det_laplace()?;
        // X adj(Y) = det Y · W
        let xw = s.x.matmul(&adjugate(&s.y)?)?;
        let w11 = xw.submatrix(&seg(1, k), &seg(1, k))?;
        let u_tilde = if b == 0 {
            w11
        } else {
            let w21 = xw.submatrix(&seg(k + 1, a), &seg(1, k))?;
            let y1 = s.y.submatrix(&seg(1, k), &seg(1, b))?;
            let t = y1.matmul(&adjugate(&y2)?)?.matmul(&w21)?;
            w11.scalar_mul(&det_y2).sub(&t)?
        };
        Ok(SymbolicParts {
            minors: core_minors(s)?,
            det_y,
            det_y2,
            det_ybar,
            gamma_num,
            u_tilde,
        })
    }

    fn apply(&self, p: usize, v: &[P]) -> Result<Vec<P>, StaircaseError> {
        let mut v = v.to_vec();
        for _ in 0..p {
            v = self.u_tilde.mul_vec(&v)?;
        }
        Ok(v)
    }

    /// det Ȳ · (e₂ + γe₁), the cleared form of e₂ + γe₁
    fn w(&self, k: usize) -> Vec<P> {
        let mut w = vec![P::zero(); k];
        w[0] = self.gamma_num.clone();
        w[1] = self.det_ybar.clone();
        w
    }
}

fn det_cols(cols: &[Vec<P>]) -> Result<P, StaircaseError> {
    Ok(RingMatrix::from_columns(cols)?.det_laplace()?)
}

/// lhs · Y^{ly} · Y₂^{l2}  −  rhs · Y^{ry} · Y₂^{r2}, after cancelling the
/// common powers of det Y and det Y₂.
fn balanced(lhs: &P, ly: usize, l2: usize, rhs: &P, ry: usize, r2: usize, parts: &SymbolicParts) -> P {
    let (cy, c2) = (ly.min(ry), l2.min(r2));
    let side = |p: &P, y: usize, y2: usize| {
        p.mul(&parts.det_y.pow((y - cy) as u64))
            .mul(&parts.det_y2.pow((y2 - c2) as u64))
    };
    side(lhs, ly, l2).sub(&side(rhs, ry, r2))
}

/// Polynomial residuals of the φ₁, φ₂ and φ_{n+1} closed forms. All three
/// are identically zero when the closed forms hold.
pub fn detphi_residuals(s: &StaircaseData<P>) -> Result<[P; 3], StaircaseError> {
    let parts = SymbolicParts::new(s)?;
    detphi_residuals_with(s, &parts)
}

pub fn detphi_residuals_with(s: &StaircaseData<P>, parts: &SymbolicParts) -> Result<[P; 3], StaircaseError> {
    let (n, k) = (s.n, s.k);
    let e1 = unit::<P>(1, k);
    let t = k * (k - 1) / 2;
    let e1_pows = |hi: usize| -> Result<Vec<Vec<P>>, StaircaseError> {
        (0..=hi).rev().map(|p| parts.apply(p, &e1)).collect()
    };
    let m = &parts.minors;

    // φ₁ D^T = ε₁ (det Y)^{k−1} det Y₂ det[Ũ^{k−1}e₁ … e₁]
    let k1 = det_cols(&e1_pows(k - 1)?)?.mul(&P::from_i64(constants::eps1(n, k)));
    let r1 = balanced(m.phi(1), t, t, &k1, k - 1, 1, parts);

    // φ₂ D^T = ε₂ (det Y)^{k−2} det Y₂ det[Ũ^{k−1}w, Ũ^{k−2}e₁, …, e₁]
    let mut cols = vec![parts.apply(k - 1, &parts.w(k))?];
    cols.extend(e1_pows(k - 2)?);
    let k2 = det_cols(&cols)?.mul(&P::from_i64(constants::eps2(n, k)));
    let r2 = balanced(m.phi(2), t, t, &k2, k - 2, 1, parts);

    // φ_{n+1} det Ȳ D^{T3} = ε_{n+1} (det Y)^{k−2} det Y₂
    //                        det[Ũ^{k−2}e₁, Ũ^{k−2}w, Ũ^{k−3}e₁, …, e₁]
    let t3 = 2 * (k - 2) + if k >= 3 { (k - 3) * (k - 2) / 2 } else { 0 };
    let mut cols = vec![parts.apply(k - 2, &e1)?, parts.apply(k - 2, &parts.w(k))?];
    if k >= 3 {
        cols.extend(e1_pows(k - 3)?);
    }
    let k3 = det_cols(&cols)?.mul(&P::from_i64(constants::eps_last(n, k)));
    let lhs3 = m.phi(n + 1).mul(&parts.det_ybar);
    let r3 = balanced(&lhs3, t3, t3, &k3, k - 2, 1, parts);
    Ok([r1, r2, r3])
}

/// Right-hand side of the main identity as a polynomial, and its exact
/// quotient by φ₁ (an error if φ₁ does not divide it).
pub struct SymbolicMain {
    pub phi1: P,
    pub rhs: P,
    pub pencil: Vec<P>,
    pub quotient: Result<P, ArithError>,
}

pub fn main_identity_quotient(s: &StaircaseData<P>) -> Result<SymbolicMain, StaircaseError> {
    let minors = core_minors(s)?;
    let det_ybar = s.ybar().det_laplace()?;
    let pencil = pencil_coeffs_direct(s)?;
    let rhs = main_rhs(&pencil, &det_ybar, minors.phi(2), minors.phi(s.n + 1), s.n);
    let phi1 = minors.phi(1).clone();
    let quotient = rhs.div_exact(&phi1);
    Ok(SymbolicMain {
        phi1,
        rhs,
        pencil,
        quotient,
    })
}

/// Specialize a symbolic instance at a point.
pub fn evaluate_staircase<F: FromRational>(
    s: &StaircaseData<P>,
    at: &VarAssignment<F>,
) -> Result<StaircaseData<F>, StaircaseError> {
    Ok(StaircaseData {
        n: s.n,
        a: s.a,
        b: s.b,
        k: s.k,
        x: s.x.try_map(|p| poly_eval(p, at))?,
        y: s.y.try_map(|p| poly_eval(p, at))?,
    })
}

/// Every variable index a symbolic instance uses.
pub fn staircase_vars(s: &StaircaseData<P>) -> Vec<u32> {
    let mut v: Vec<u32> = s
        .x
        .entries()
        .iter()
        .chain(s.y.entries())
        .flat_map(|p| p.variables())
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}
