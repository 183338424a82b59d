//! Periodic staircase matrices: the core Φ and its trailing minors, the
//! k×k matrix U, pencil coefficients, Krylov matrices, φ₁* and the
//! multinomial exchange identity for the core determinant.

use exact_arith::ArithError;
use matrix_core::MatrixError;

mod identity;
mod krylov;
mod pencil;
mod shape;
pub mod symbolic;
mod trials;

pub use identity::{
    constants, detphi_closed_forms, main_rhs, phi1_star, verify_detphi_lemmas, verify_main_identity,
    DetphiReport, MainReport,
};
pub use krylov::{adjoint_last_row, k_star, krylov, Krylov};
pub use pencil::{
    compute_u, gamma, pencil_coeffs, pencil_coeffs_direct, pencil_value, Derived,
};
pub use shape::{
    build_core, core_minors, random_staircase, staircase_from_json, staircase_to_json,
    symbolic_staircase, trailing_minors, validate_shape, x_var, y_var, CoreMinors,
    StaircaseData,
};
pub use trials::{with_resample, RESAMPLE_BUDGET};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StaircaseError {
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("singular at this point: {0}")]
    Singular(&'static str),
    #[error("no nonsingular point after {0} resamples")]
    SingularPoint(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Canonical unit vector e_i of length k (1-based i).
pub fn unit<T: exact_arith::Ring>(i: usize, k: usize) -> Vec<T> {
    (1..=k).map(|j| if j == i { T::one() } else { T::zero() }).collect()
}
