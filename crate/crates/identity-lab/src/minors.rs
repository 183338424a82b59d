use exact_arith::Ring;
use matrix_core::RingMatrix;

use crate::IdentityError;

/// Determinant of M with the listed rows and columns removed (1-based).
pub fn deleted_minor<T: Ring>(m: &RingMatrix<T>, rows: &[usize], cols: &[usize]) -> Result<T, IdentityError> {
    let d = m.delete(rows, cols)?;
    Ok(if T::IS_FIELD { d.det()? } else { d.det_laplace()? })
}

fn check_range(what: &str, idx: &[usize], max: usize) -> Result<(), IdentityError> {
    for &i in idx {
        if i == 0 || i > max {
            return Err(IdentityError::IndexInvalid(format!("{what} index {i} outside 1..{max}")));
        }
    }
    Ok(())
}

fn sorted2(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// det A · det A_{α̂β̂}^{γ̂δ̂} + det A_{α̂}^{δ̂} det A_{β̂}^{γ̂} − det A_{α̂}^{γ̂} det A_{β̂}^{δ̂}
/// with α < β and γ < δ (the pairs are sorted first; the identity is not
/// symmetric in them).
pub fn desnanot_jacobi_residual<T: Ring>(
    a: &RingMatrix<T>,
    alpha: usize,
    beta: usize,
    gamma: usize,
    delta: usize,
) -> Result<T, IdentityError> {
    if !a.is_square() {
        return Err(IdentityError::DimensionMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    check_range("row", &[alpha, beta], n)?;
    check_range("column", &[gamma, delta], n)?;
    if alpha == beta || gamma == delta {
        return Err(IdentityError::IndexInvalid("rows and columns must be distinct".into()));
    }
    let (al, be) = sorted2(alpha, beta);
    let (ga, de) = sorted2(gamma, delta);
    let dm = |r: &[usize], c: &[usize]| deleted_minor(a, r, c);
    Ok(dm(&[], &[])?
        .mul(&dm(&[al, be], &[ga, de])?)
        .add(&dm(&[al], &[de])?.mul(&dm(&[be], &[ga])?))
        .sub(&dm(&[al], &[ga])?.mul(&dm(&[be], &[de])?)))
}

/// Short Plücker relation for an m×(m+1) matrix, α < β < γ after sorting:
/// det B^{α̂β̂}_{δ̂} det B^{γ̂} + det B^{β̂γ̂}_{δ̂} det B^{α̂} − det B^{α̂γ̂}_{δ̂} det B^{β̂}
pub fn plucker_residual<T: Ring>(
    b: &RingMatrix<T>,
    alpha: usize,
    beta: usize,
    gamma: usize,
    delta: usize,
) -> Result<T, IdentityError> {
    let m = b.rows();
    if b.cols() != m + 1 {
        return Err(IdentityError::DimensionMismatch(format!("need m x (m+1), got {}x{}", m, b.cols())));
    }
    check_range("column", &[alpha, beta, gamma], m + 1)?;
    check_range("row", &[delta], m)?;
    let mut c = [alpha, beta, gamma];
    c.sort_unstable();
    if c[0] == c[1] || c[1] == c[2] {
        return Err(IdentityError::IndexInvalid("columns must be distinct".into()));
    }
    let [al, be, ga] = c;
    let dm = |r: &[usize], cc: &[usize]| deleted_minor(b, r, cc);
    Ok(dm(&[delta], &[al, be])?
        .mul(&dm(&[], &[ga])?)
        .add(&dm(&[delta], &[be, ga])?.mul(&dm(&[], &[al])?))
        .sub(&dm(&[delta], &[al, ga])?.mul(&dm(&[], &[be])?)))
}

/// The three terms of the double Plücker identity for an m×(m+1) matrix:
///   T₁ = det B_{1̂2̂}^{1̂m̂(m+1)^} det B_{1̂}^{1̂2̂} det B^{(m+1)^}
///   T₂ = det B_{1̂2̂}^{1̂2̂(m+1)^} det B_{1̂}^{m̂(m+1)^} det B^{1̂}
///   T₃ = det B_{1̂}^{1̂(m+1)^} (det B_{1̂2̂}^{1̂m̂(m+1)^} det B^{2̂} − det B_{1̂2̂}^{2̂m̂(m+1)^} det B^{1̂})
/// and the identity reads T₁ + T₂ = T₃.
pub fn pluckpluck_terms<T: Ring>(b: &RingMatrix<T>) -> Result<[T; 3], IdentityError> {
    let m = b.rows();
    if m < 3 || b.cols() != m + 1 {
        return Err(IdentityError::DimensionMismatch(format!(
            "need m x (m+1) with m >= 3, got {}x{}",
            m,
            b.cols()
        )));
    }
    let dm = |r: &[usize], c: &[usize]| deleted_minor(b, r, c);
    let t1 = dm(&[1, 2], &[1, m, m + 1])?.mul(&dm(&[1], &[1, 2])?).mul(&dm(&[], &[m + 1])?);
    let t2 = dm(&[1, 2], &[1, 2, m + 1])?.mul(&dm(&[1], &[m, m + 1])?).mul(&dm(&[], &[1])?);
    let t3 = dm(&[1], &[1, m + 1])?.mul(
        &dm(&[1, 2], &[1, m, m + 1])?
            .mul(&dm(&[], &[2])?)
            .sub(&dm(&[1, 2], &[2, m, m + 1])?.mul(&dm(&[], &[1])?)),
    );
    Ok([t1, t2, t3])
}

pub fn pluckpluck_residual<T: Ring>(b: &RingMatrix<T>) -> Result<T, IdentityError> {
    let [t1, t2, t3] = pluckpluck_terms(b)?;
    Ok(t1.add(&t2).sub(&t3))
}
