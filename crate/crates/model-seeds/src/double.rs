//! The seed on the Drinfeld double of GL_n.
//!
//! Vertex (i, j) of the grid carries h_ij = det Y_{[i,i+n−j]}^{[j,n]} for
//! i ≤ j, g_ij = det X_{[i,n]}^{[j,j+n−i]} at (n+i−1, j) for j ≤ i, and the
//! core minors φ_{kn+i} at (i+k+1, i). The core is the one of type
//! (n, n, 0), N = n(n−1). The special vertex (2, 1) has multiplicity n and
//! its string is [1, c̃_{n−1}, …, c̃_1, 1] with c̃_i = (−1)^{i(n−1)} c_i on
//! isolated frozen vertices.

use exact_arith::{random_fp, Fp, FromRational, Poly, Rational, Ring};
use matrix_core::{seg, RingMatrix};
use rand_chacha::ChaCha8Rng;
use staircase_core::{core_minors, pencil_coeffs_direct, validate_shape, StaircaseData};

use crate::{Builder, Coord, LabeledSeed, SeedError};

pub(crate) fn det<T: Ring>(m: &RingMatrix<T>) -> Result<T, SeedError> {
    Ok(if T::IS_FIELD { m.det()? } else { m.det_laplace()? })
}

pub fn g_minor<T: Ring>(x: &RingMatrix<T>, i: usize, j: usize) -> Result<T, SeedError> {
    let n = x.rows();
    det(&x.submatrix(&seg(i, n), &seg(j, j + n - i))?)
}

pub fn h_minor<T: Ring>(y: &RingMatrix<T>, i: usize, j: usize) -> Result<T, SeedError> {
    let n = y.rows();
    det(&y.submatrix(&seg(i, i + n - j), &seg(j, n))?)
}

/// c̃_i = (−1)^{i(n−1)} c_i for i = 0..k.
pub(crate) fn signed_pencil<T: FromRational>(s: &StaircaseData<T>) -> Result<Vec<T>, SeedError> {
    let c = pencil_coeffs_direct(s)?;
    Ok(c.iter()
        .enumerate()
        .map(|(i, ci)| ci.signed((i * (s.n - 1)) as u64))
        .collect())
}

pub fn build_sigma_double<T: FromRational>(
    n: usize,
    x: &RingMatrix<T>,
    y: &RingMatrix<T>,
) -> Result<LabeledSeed<T>, SeedError> {
    if n < 3 {
        return Err(SeedError::Params(format!("double needs n >= 3, got {n}")));
    }
    let s = validate_shape(n, n, 0, x.clone(), y.clone())?;
    let big_n = n * (n - 1);
    let minors = core_minors(&s)?;
    let ct = signed_pencil(&s)?;

    let mut b = Builder::new();
    for i in 1..=n {
        for j in i..=n {
            b.vertex(Coord::Grid(i, j), format!("h{i},{j}"), i == 1, 1, h_minor(y, i, j)?);
        }
    }
    for i in 1..=n {
        for j in 1..=i {
            if (i, j) != (1, 1) {
                b.vertex(Coord::Grid(n + i - 1, j), format!("g{i},{j}"), j == 1, 1, g_minor(x, i, j)?);
            }
        }
    }
    b.vertex(Coord::Extra, "g1,1".into(), true, 1, g_minor(x, 1, 1)?);
    for kk in 0..n.saturating_sub(2) {
        for i in 1..=n {
            let c = Coord::Grid(i + kk + 1, i);
            let m = if c == Coord::Grid(2, 1) { n as u32 } else { 1 };
            let idx = kk * n + i;
            b.vertex(c, format!("phi{idx}"), false, m, minors.phi(idx).clone());
        }
    }
    let last = big_n - n + 1;
    b.vertex(Coord::Grid(n, 1), format!("phi{last}"), false, 1, minors.phi(last).clone());
    for i in 1..n {
        b.vertex(Coord::Iso(i), format!("c~{i}"), true, 1, ct[i].clone());
    }

    let g = Coord::Grid;
    for i in 1..=2 * n - 2 {
        for j in 1..n {
            b.edge(g(i, j), g(i + 1, j + 1), 1);
        }
    }
    for i in 2..=2 * n - 1 {
        for j in 2..=n {
            b.edge(g(i, j), g(i, j - 1), 1);
            b.edge(g(i, j), g(i - 1, j), 1);
        }
    }
    for i in 2..=n {
        b.edge(g(i, 1), g(i - 1, 1), 1);
    }
    let mut path = vec![g(n + 1, n)];
    for t in 3..=n {
        path.push(g(t, 1));
        path.push(g(n + t - 1, n));
    }
    for w in path.windows(2) {
        b.edge(w[0], w[1], 1);
    }
    b.edge(Coord::Extra, g(2, 1), 1);

    let string: Vec<Coord> = (1..n).map(|r| Coord::Iso(n - r)).collect();
    b.finish(g(2, 1), &string)
}

/// Random X, Y over F_p for the double.
pub fn random_double(n: usize, rng: &mut ChaCha8Rng) -> (RingMatrix<Fp>, RingMatrix<Fp>) {
    let x = RingMatrix::from_fn(n, n, |_, _| random_fp(rng));
    let y = RingMatrix::from_fn(n, n, |_, _| random_fp(rng));
    (x, y)
}

/// Generic X, Y: x_ij is variable (i−1)n + j − 1, y_ij follows after all of X.
pub fn symbolic_double(n: usize) -> (RingMatrix<Poly<Rational>>, RingMatrix<Poly<Rational>>) {
    let x = RingMatrix::from_fn(n, n, |i, j| Poly::var(((i - 1) * n + j - 1) as u32));
    let y = RingMatrix::from_fn(n, n, |i, j| Poly::var((n * n + (i - 1) * n + j - 1) as u32));
    (x, y)
}

/// φ_i − g_{t,t} with t = i − N + n, for i = N−n+2..N. The trailing
/// minors of the core below size n sit entirely inside the last X block.
pub fn double_phi_g_check<T: FromRational>(
    n: usize,
    x: &RingMatrix<T>,
    y: &RingMatrix<T>,
) -> Result<Vec<T>, SeedError> {
    let s = validate_shape(n, n, 0, x.clone(), y.clone())?;
    let minors = core_minors(&s)?;
    let big_n = n * (n - 1);
    ((big_n - n + 2)..=big_n)
        .map(|i| {
            let t = i + n - big_n;
            Ok(minors.phi(i).sub(&g_minor(x, t, t)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 3..=5 {
            let (x, y) = random_double(n, &mut rng);
            let s = build_sigma_double(n, &x, &y).unwrap();
            let q = &s.seed.quiver;
            assert_eq!(q.len(), 2 * n * n, "n = {n}");
            assert_eq!(q.frozen_count(), 2 * n + n - 1);
            assert_eq!(q.special(), vec![s.special]);
            assert_eq!(q.mult(s.special), n as u32);
            assert!(!q.has_two_cycles());
            for i in 1..n {
                assert!(q.is_isolated(s.id(Coord::Iso(i))));
            }
            assert!(double_phi_g_check(n, &x, &y).unwrap().iter().all(|r| r.is_zero()));
        }
    }
}
