//! The exotic GL6 example: two staircase pairs assembled from a pair of
//! 6×6 matrices R, S. Pair 1 is of type (5, 2, 0), pair 2 of type (7, 6, 4).
//! The core of pair 2 is block upper triangular with trailing block
//! R_{[3,6]}^{[1,4]}, so its leading 7×7 block Φ₂ carries the φ_{2i}.

use exact_arith::{Field, FromRational, Poly, Rational, Ring};
use matrix_core::{seg, RingMatrix};
use staircase_core::{core_minors, pencil_coeffs_direct, phi1_star, trailing_minors, validate_shape, Derived, StaircaseData};

use crate::double::{det, g_minor, h_minor};
use crate::SeedError;

#[derive(Clone, Debug)]
pub struct Gamma6Data<T> {
    pub r: RingMatrix<T>,
    pub s: RingMatrix<T>,
    pub pair1: StaircaseData<T>,
    pub pair2: StaircaseData<T>,
    pub phi1: RingMatrix<T>,
    pub phi2: RingMatrix<T>,
    /// φ_{11}..φ_{15}, then 1
    pub phi1_minors: Vec<T>,
    /// φ_{21}..φ_{27}, then 1
    pub phi2_minors: Vec<T>,
    pub pencil1: Vec<T>,
    pub pencil2: Vec<T>,
}

impl<T: Ring> Gamma6Data<T> {
    pub fn c11(&self) -> &T {
        &self.pencil1[1]
    }

    pub fn c21(&self) -> &T {
        &self.pencil2[1]
    }
}

fn minor<T: Ring>(m: &RingMatrix<T>, rows: (usize, usize), cols: (usize, usize)) -> Result<T, SeedError> {
    det(&m.submatrix(&seg(rows.0, rows.1), &seg(cols.0, cols.1))?)
}

fn paste<T: Ring>(dst: &mut RingMatrix<T>, at: (usize, usize), src: &RingMatrix<T>) {
    for i in 1..=src.rows() {
        for j in 1..=src.cols() {
            dst.set(at.0 + i - 1, at.1 + j - 1, src.get(i, j).clone());
        }
    }
}

pub fn build_gamma6<T: FromRational>(r: &RingMatrix<T>, s: &RingMatrix<T>) -> Result<Gamma6Data<T>, SeedError> {
    if r.rows() != 6 || r.cols() != 6 || s.rows() != 6 || s.cols() != 6 {
        return Err(SeedError::Params("R and S must be 6x6".into()));
    }
    let sub = |m: &RingMatrix<T>, r0, r1, c0, c1| m.submatrix(&seg(r0, r1), &seg(c0, c1));

    let mut x1 = RingMatrix::zeros(5, 5);
    paste(&mut x1, (1, 1), &sub(s, 4, 5, 2, 6)?);
    let mut y1 = RingMatrix::zeros(5, 5);
    paste(&mut y1, (1, 1), &sub(r, 5, 6, 1, 2)?);
    paste(&mut y1, (3, 1), &sub(s, 1, 3, 2, 3)?);
    paste(&mut y1, (3, 3), &sub(s, 1, 3, 4, 6)?);
    let pair1 = validate_shape(5, 2, 0, x1, y1)?;

    let mut x2 = RingMatrix::zeros(7, 7);
    paste(&mut x2, (1, 5), &sub(s, 2, 3, 4, 6)?);
    let mut y2 = RingMatrix::zeros(7, 7);
    paste(&mut y2, (1, 1), r);
    paste(&mut y2, (7, 5), &sub(s, 1, 1, 4, 6)?);
    let pair2 = validate_shape(7, 6, 4, x2, y2)?;

    let c1 = core_minors(&pair1)?;
    let c2 = core_minors(&pair2)?;
    let phi2 = c2.phi_matrix.submatrix(&seg(1, 7), &seg(1, 7))?;
    let phi2_minors = trailing_minors(&phi2)?;
    Ok(Gamma6Data {
        r: r.clone(),
        s: s.clone(),
        pencil1: pencil_coeffs_direct(&pair1)?,
        pencil2: pencil_coeffs_direct(&pair2)?,
        phi1: c1.phi_matrix.clone(),
        phi1_minors: (1..=6).map(|i| c1.phi(i).clone()).collect(),
        phi2,
        phi2_minors,
        pair1,
        pair2,
    })
}

/// Closed forms that hold for every R, S; each entry is a residual.
///   det Ȳ₁ = r₆₂ det S_{[1,3]}^{[4,6]},  det Ȳ₂ = s₁₆ det R_{[2,6]}^{[2,6]},
///   pencil 1: c₀ = det S_{[1,3]}^{[4,6]} det R_{[5,6]}^{[1,2]}, c₂ = det S_{[1,5]}^{[2,6]},
///   pencil 2: c₀ = s₁₆ det R, c₂ = det S_{[1,3]}^{[4,6]} det R_{[3,6]}^{[1,4]},
///   φ₁ of pair 2 = det Φ₂ · det R_{[3,6]}^{[1,4]}.
pub fn gamma6_structure<T: FromRational>(d: &Gamma6Data<T>) -> Result<Vec<T>, SeedError> {
    let (r, s) = (&d.r, &d.s);
    let s_top = minor(s, (1, 3), (4, 6))?;
    let r_low = minor(r, (3, 6), (1, 4))?;
    let full2 = core_minors(&d.pair2)?;
    Ok(vec![
        det(&d.pair1.ybar())?.sub(&r.get(6, 2).mul(&s_top)),
        det(&d.pair2.ybar())?.sub(&s.get(1, 6).mul(&minor(r, (2, 6), (2, 6))?)),
        d.pencil1[0].sub(&s_top.mul(&minor(r, (5, 6), (1, 2))?)),
        d.pencil1[2].sub(&minor(s, (1, 5), (2, 6))?),
        d.pencil2[0].sub(&s.get(1, 6).mul(&det(r)?)),
        d.pencil2[2].sub(&s_top.mul(&r_low)),
        full2.phi(1).sub(&d.phi2_minors[0].mul(&r_low)),
    ])
}

/// φ₁₁* and φ₂₁*: φ₁* of each pair with the factors that are not cluster
/// variables removed.
pub fn gamma6_stars<F: Field + FromRational>(d: &Gamma6Data<F>) -> Result<(F, F), SeedError> {
    let (r, s) = (&d.r, &d.s);
    let st1 = phi1_star(&d.pair1, &Derived::new(&d.pair1)?)?;
    let st2 = phi1_star(&d.pair2, &Derived::new(&d.pair2)?)?;
    let s_top = minor(s, (1, 3), (4, 6))?;
    let r_low = minor(r, (3, 6), (1, 4))?;
    Ok((st1.div(&s_top)?, st2.div(&r_low.mul(s.get(1, 6)))?))
}

/// Residuals φ₁₁φ₁₁* − RHS and φ₂₁φ₂₁* − RHS of the two exchange relations.
pub fn gamma_id_residuals<F: Field + FromRational>(d: &Gamma6Data<F>) -> Result<[F; 2], SeedError> {
    let (r, s) = (&d.r, &d.s);
    let (st1, st2) = gamma6_stars(d)?;
    let s_top = minor(s, (1, 3), (4, 6))?;
    let r_low = minor(r, (3, 6), (1, 4))?;
    let r22 = minor(r, (2, 6), (2, 6))?;
    let (p11, p12) = (&d.phi1_minors[0], &d.phi1_minors[1]);
    let (p21, p22) = (&d.phi2_minors[0], &d.phi2_minors[1]);
    let r62 = r.get(6, 2);
    let rhs1 = minor(s, (1, 5), (2, 6))?
        .mul(&s_top)
        .mul(&r62.pow(2))
        .add(&d.c11().mul(r62).mul(p12))
        .add(&minor(r, (5, 6), (1, 2))?.mul(&p12.pow(2)));
    let rhs2 = s.get(1, 6)
        .mul(&s_top)
        .mul(&r_low)
        .mul(&r22.pow(2))
        .add(&d.c21().mul(&r22).mul(p22))
        .add(&det(r)?.mul(&p22.pow(2)));
    Ok([p11.mul(&st1).sub(&rhs1), p21.mul(&st2).sub(&rhs2)])
}

/// With R = S = U the relations in terms of the standard minors of U:
///   h₁₂h₁₄g₆₂² + c₁₁g₆₂φ₁₂ + g₅₁φ₁₂²,
///   h₁₆h₁₄g₃₁g₂₂² + c₂₁g₂₂φ₂₂ + g₁₁φ₂₂².
pub fn frozen_form_residuals<F: Field + FromRational>(u: &RingMatrix<F>) -> Result<[F; 2], SeedError> {
    let d = build_gamma6(u, u)?;
    let (st1, st2) = gamma6_stars(&d)?;
    let g = |i, j| g_minor(u, i, j);
    let h = |i, j| h_minor(u, i, j);
    let (p11, p12) = (&d.phi1_minors[0], &d.phi1_minors[1]);
    let (p21, p22) = (&d.phi2_minors[0], &d.phi2_minors[1]);
    let f1 = h(1, 2)?
        .mul(&h(1, 4)?)
        .mul(&g(6, 2)?.pow(2))
        .add(&d.c11().mul(&g(6, 2)?).mul(p12))
        .add(&g(5, 1)?.mul(&p12.pow(2)));
    let f2 = h(1, 6)?
        .mul(&h(1, 4)?)
        .mul(&g(3, 1)?)
        .mul(&g(2, 2)?.pow(2))
        .add(&d.c21().mul(&g(2, 2)?).mul(p22))
        .add(&g(1, 1)?.mul(&p22.pow(2)));
    Ok([p11.mul(&st1).sub(&f1), p21.mul(&st2).sub(&f2)])
}

/// F_Γ on a single matrix U (R = S = U): the standard minors of U without
/// g_{i+1,i}, g₆₁, h_{i,i+2}, h₁₅, h₂₆, together with φ_{1i} and φ_{2i}.
/// Every function is evaluated at each of `points`; entries whose value
/// tuples agree (up to sign) are merged, the first label kept.
pub fn f_gamma<T: FromRational>(points: &[RingMatrix<T>]) -> Result<Vec<String>, SeedError> {
    let dropped_g = |i: usize, j: usize| i == j + 1 || (i, j) == (6, 1);
    let dropped_h = |i: usize, j: usize| j == i + 2 || (i, j) == (1, 5) || (i, j) == (2, 6);
    let mut entries: Vec<(String, Vec<T>)> = vec![];
    let data = points
        .iter()
        .map(|u| build_gamma6(u, u))
        .collect::<Result<Vec<_>, _>>()?;
    let mut push = |label: String, vals: Vec<T>| {
        let neg: Vec<T> = vals.iter().map(|v| v.neg()).collect();
        if !entries.iter().any(|(_, v)| *v == vals || *v == neg) {
            entries.push((label, vals));
        }
    };
    for i in 1..=6 {
        for j in 1..=i {
            if !dropped_g(i, j) {
                let v = points.iter().map(|u| g_minor(u, i, j)).collect::<Result<_, _>>()?;
                push(format!("g{i}{j}"), v);
            }
        }
    }
    for i in 1..=6 {
        for j in i + 1..=6 {
            if !dropped_h(i, j) {
                let v = points.iter().map(|u| h_minor(u, i, j)).collect::<Result<_, _>>()?;
                push(format!("h{i}{j}"), v);
            }
        }
    }
    for i in 1..=5 {
        push(format!("phi1,{i}"), data.iter().map(|d| d.phi1_minors[i - 1].clone()).collect());
    }
    for i in 1..=7 {
        push(format!("phi2,{i}"), data.iter().map(|d| d.phi2_minors[i - 1].clone()).collect());
    }
    Ok(entries.into_iter().map(|(l, _)| l).collect())
}

/// Φ₁ and Φ₂ for symbolic R, S against the layouts written out by hand:
/// Φ₁ has rows (r₆₁, r₆₂, 0, 0, 0) and S_{1,2,3,5}^{[2,6]}; Φ₂ has rows
/// (R_i, 0) for i = 2..6, then (0, 0, 0, 0, s_{i4}, s_{i5}, s_{i6}) for i = 1, 3.
pub fn gamma6_pattern_check() -> Result<bool, SeedError> {
    type P = Poly<Rational>;
    let (r, s) = symbolic_rs();
    let d = build_gamma6(&r, &s)?;
    let rv = |i: usize, j: usize| r.get(i, j).clone();
    let sv = |i: usize, j: usize| s.get(i, j).clone();
    let z = P::zero;
    let mut rows1 = vec![vec![rv(6, 1), rv(6, 2), z(), z(), z()]];
    for i in [1, 2, 3, 5] {
        rows1.push((2..=6).map(|j| sv(i, j)).collect());
    }
    let mut rows2: Vec<Vec<P>> = (2..=6)
        .map(|i| (1..=6).map(|j| rv(i, j)).chain([z()]).collect())
        .collect();
    for i in [1, 3] {
        rows2.push(vec![z(), z(), z(), z(), sv(i, 4), sv(i, 5), sv(i, 6)]);
    }
    Ok(d.phi1 == RingMatrix::from_rows(rows1)? && d.phi2 == RingMatrix::from_rows(rows2)?)
}

/// r_ij is variable 6(i−1) + j − 1, s_ij is 36 more.
pub fn symbolic_rs() -> (RingMatrix<Poly<Rational>>, RingMatrix<Poly<Rational>>) {
    let r = RingMatrix::from_fn(6, 6, |i, j| Poly::var((6 * (i - 1) + j - 1) as u32));
    let s = RingMatrix::from_fn(6, 6, |i, j| Poly::var((36 + 6 * (i - 1) + j - 1) as u32));
    (r, s)
}
