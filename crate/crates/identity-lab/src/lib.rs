//! Determinantal identities used by the exchange-relation proofs, each
//! exposed as a residual that is exactly zero when the identity holds.

use serde::Serialize;

mod gencop;
mod longid;
mod minors;
mod theta;

pub use gencop::{gencop_witness, leading_minors, WitnessCheck, MAX_ESCALATIONS};
pub use longid::long_identity_residual;
pub use minors::{deleted_minor, desnanot_jacobi_residual, pluckpluck_residual, pluckpluck_terms, plucker_residual};
pub use theta::{
    band_fixture, double_h_fixture, double_phi_fixture, interpolate, theta_exchange_check, PerturbationSpec,
    ThetaOutcome,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IdentityError {
    #[error("invalid index: {0}")]
    IndexInvalid(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no witness for k = {0} after {1} escalations of t")]
    WitnessSearchFailed(usize, usize),
    #[error("nonzero residual at theta^{coeff}: {value}")]
    NonzeroResidual { coeff: usize, value: String },
    #[error(transparent)]
    Matrix(#[from] matrix_core::MatrixError),
    #[error(transparent)]
    Staircase(#[from] staircase_core::StaircaseError),
    #[error(transparent)]
    Seed(#[from] model_seeds::SeedError),
    #[error(transparent)]
    Arith(#[from] exact_arith::ArithError),
}

/// One evaluated instance. `pass` is exactly `residual == 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub instance: String,
    pub residual: String,
    pub pass: bool,
    pub seed: Option<u64>,
    pub retries: usize,
}

impl IdentityReport {
    pub fn new<T: exact_arith::Ring>(identity: &str, instance: impl Into<String>, residual: &T) -> IdentityReport {
        IdentityReport {
            identity: identity.into(),
            instance: instance.into(),
            residual: residual.to_string(),
            pass: residual.is_zero(),
            seed: None,
            retries: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> IdentityReport {
        self.seed = Some(seed);
        self
    }
}
