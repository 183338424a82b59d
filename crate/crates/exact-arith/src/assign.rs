use std::collections::BTreeMap;

use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::{modulus, ArithError, Fp, FromRational, Poly, Rational};

/// Values for a set of variable indices.
pub type VarAssignment<F> = BTreeMap<u32, F>;

/// Uniform residue in [0, p).
pub fn random_fp(rng: &mut ChaCha8Rng) -> Fp {
    Fp::new(rng.gen_range(0..modulus()))
}

/// Independent uniform residues for `vars`, reproducible from the generator
/// state.
pub fn random_assignment(vars: &[u32], rng: &mut ChaCha8Rng) -> VarAssignment<Fp> {
    vars.iter().map(|&v| (v, random_fp(rng))).collect()
}

/// Evaluate a rational polynomial in Q or F_p.
pub fn poly_eval<F: FromRational>(p: &Poly<Rational>, at: &VarAssignment<F>) -> Result<F, ArithError> {
    p.eval_with(
        &|v| at.get(&v).cloned().ok_or(ArithError::MissingVariable(v)),
        &|c| F::from_rational(c),
    )
}
