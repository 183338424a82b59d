use exact_arith::{sign, Ring};
use matrix_core::RingMatrix;
use staircase_core::{k_star, krylov};

use crate::IdentityError;

fn det<T: Ring>(m: &RingMatrix<T>) -> Result<T, IdentityError> {
    Ok(if T::IS_FIELD { m.det()? } else { m.det_bareiss()? })
}

/// det(det K₁ · A − det K₂ · 1) − (−1)^{k(k−1)/2} det K · det K*
/// for K, K₁, K₂, K* built from (A; u, v).
pub fn long_identity_residual<T: Ring>(a: &RingMatrix<T>, u: &[T], v: &[T]) -> Result<T, IdentityError> {
    let k = a.rows();
    if !a.is_square() || u.len() != k || v.len() != k {
        return Err(IdentityError::DimensionMismatch(format!(
            "need a square A and vectors of length {k}"
        )));
    }
    let kr = krylov(a, u, v)?;
    let ks = k_star(a, u, v)?;
    let d1 = det(&kr.k1)?;
    let d2 = det(&kr.k2)?;
    let lhs = det(&a.scalar_mul(&d1).sub(&RingMatrix::identity(k).scalar_mul(&d2))?)?;
    let rhs = det(&kr.k)?.mul(&det(&ks)?).mul(&T::from_i64(sign((k * (k - 1) / 2) as u64)));
    Ok(lhs.sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::Fp;
    use staircase_core::unit;

    #[test]
    fn identity_matrix_case() {
        let a = RingMatrix::<Fp>::identity(2);
        let r = long_identity_residual(&a, &unit(1, 2), &unit(2, 2)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn length_mismatch() {
        let a = RingMatrix::<Fp>::identity(3);
        assert!(matches!(
            long_identity_residual(&a, &unit(1, 2), &unit(2, 3)),
            Err(IdentityError::DimensionMismatch(_))
        ));
    }
}
