use exact_arith::Ring;
use matrix_core::{seg, MatrixError, RingMatrix};

/// K = [u, Au, ..., A^{k-1}u], K₁ = [v, u, Au, ..., A^{k-2}u],
/// K₂ = [Av, u, Au, ..., A^{k-2}u].
#[derive(Clone, Debug, PartialEq)]
pub struct Krylov<T> {
    pub k: RingMatrix<T>,
    pub k1: RingMatrix<T>,
    pub k2: RingMatrix<T>,
}

pub fn krylov<T: Ring>(a: &RingMatrix<T>, u: &[T], v: &[T]) -> Result<Krylov<T>, MatrixError> {
    let k = a.rows();
    if !a.is_square() || u.len() != k || v.len() != k {
        return Err(MatrixError::DimensionMismatch(format!(
            "krylov needs a square A and vectors of length {k}"
        )));
    }
    let mut powers = vec![u.to_vec()];
    for _ in 1..k {
        let next = a.mul_vec(powers.last().unwrap())?;
        powers.push(next);
    }
    let head = &powers[..k.saturating_sub(1)];
    let mut c1 = vec![v.to_vec()];
    c1.extend_from_slice(head);
    let mut c2 = vec![a.mul_vec(v)?];
    c2.extend_from_slice(head);
    Ok(Krylov {
        k: RingMatrix::from_columns(&powers)?,
        k1: RingMatrix::from_columns(&c1)?,
        k2: RingMatrix::from_columns(&c2)?,
    })
}

/// Last row of the classical adjoint: w·M = det(M)·e_kᵀ, singular M
/// included. Entry j is the (j, k) cofactor.
pub fn adjoint_last_row<T: Ring>(m: &RingMatrix<T>) -> Result<Vec<T>, MatrixError> {
    let k = m.rows();
    if !m.is_square() {
        return Err(MatrixError::NotSquare(m.rows(), m.cols()));
    }
    (1..=k)
        .map(|j| {
            let rows: Vec<usize> = (1..=k).filter(|&r| r != j).collect();
            let d = m.submatrix(&rows, &seg(1, k - 1))?.det()?;
            Ok(d.signed((j + k) as u64))
        })
        .collect()
}

/// K*(A; u, v): rows w, wA, ..., wA^{k-1} with w the adjoint last row of
/// K₁(A; u, v).
pub fn k_star<T: Ring>(a: &RingMatrix<T>, u: &[T], v: &[T]) -> Result<RingMatrix<T>, MatrixError> {
    let kr = krylov(a, u, v)?;
    let mut rows = vec![adjoint_last_row(&kr.k1)?];
    for _ in 1..a.rows() {
        let next = a.vec_mul(rows.last().unwrap())?;
        rows.push(next);
    }
    RingMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unit;
    use exact_arith::{random_fp, Fp, Poly, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_krylov_is_degenerate() {
        for k in 2..5 {
            let i = RingMatrix::<Fp>::identity(k);
            let kr = krylov(&i, &unit(1, k), &unit(2, k)).unwrap();
            assert_eq!(kr.k.det().unwrap(), Fp::zero());
            let ks = k_star(&i, &unit(1, k), &unit(2, k)).unwrap();
            assert_eq!(ks.det().unwrap(), Fp::zero());
        }
        let i = RingMatrix::<Fp>::identity(2);
        let kr = krylov(&i, &unit(1, 2), &unit(2, 2)).unwrap();
        assert_eq!(kr.k1.det().unwrap(), Fp::from_i64(-1));
    }

    #[test]
    fn adjugate_row_of_2x2() {
        let v = |i| Poly::<Rational>::var(i);
        let m = RingMatrix::from_rows(vec![vec![v(0), v(1)], vec![v(2), v(3)]]).unwrap();
        let w = adjoint_last_row(&m).unwrap();
        assert_eq!(w, vec![v(2).neg(), v(0)]);
    }

    #[test]
    fn adjugate_row_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for k in 1..6 {
            let m = RingMatrix::from_fn(k, k, |_, _| random_fp(&mut rng));
            let w = adjoint_last_row(&m).unwrap();
            let d = m.det().unwrap();
            let expect: Vec<Fp> = unit::<Fp>(k, k).iter().map(|e| e.mul(&d)).collect();
            assert_eq!(m.vec_mul(&w).unwrap(), expect);
            // singular input: the row still annihilates
            let mut s = m.clone();
            for j in 1..=k {
                s.set(k, j, m.get(1, j).clone());
            }
            if k > 1 {
                let w = adjoint_last_row(&s).unwrap();
                assert!(s.vec_mul(&w).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn columns_match_iterated_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let k = 4;
        let a = RingMatrix::from_fn(k, k, |_, _| random_fp(&mut rng));
        let u: Vec<Fp> = (0..k).map(|_| random_fp(&mut rng)).collect();
        let v: Vec<Fp> = (0..k).map(|_| random_fp(&mut rng)).collect();
        let kr = krylov(&a, &u, &v).unwrap();
        let mut p = u.clone();
        for j in 1..=k {
            assert_eq!(kr.k.column(j), p);
            if j < k {
                assert_eq!(kr.k1.column(j + 1), p);
                assert_eq!(kr.k2.column(j + 1), p);
            }
            p = a.mul_vec(&p).unwrap();
        }
        assert_eq!(kr.k1.column(1), v);
        assert_eq!(kr.k2.column(1), a.mul_vec(&v).unwrap());
    }

    #[test]
    fn k_star_rows_are_w_times_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let k = 3;
        let a = RingMatrix::from_fn(k, k, |_, _| random_fp(&mut rng));
        let u: Vec<Fp> = (0..k).map(|_| random_fp(&mut rng)).collect();
        let v: Vec<Fp> = (0..k).map(|_| random_fp(&mut rng)).collect();
        let ks = k_star(&a, &u, &v).unwrap();
        let w = adjoint_last_row(&krylov(&a, &u, &v).unwrap().k1).unwrap();
        let mut apow = RingMatrix::identity(k);
        for i in 1..=k {
            assert_eq!(ks.row(i), apow.vec_mul(&w).unwrap());
            apow = apow.matmul(&a).unwrap();
        }
    }
}
