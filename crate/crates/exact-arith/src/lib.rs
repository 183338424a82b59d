//! Exact scalar arithmetic: big rationals, a word-sized prime field and
//! sparse multivariate polynomials.

use std::fmt;

mod assign;
mod fp;
mod poly;
mod rational;
mod scalar;

pub use assign::{poly_eval, random_assignment, random_fp, VarAssignment};
pub use fp::{modulus, Fp, DEFAULT_MODULUS, MODULUS_ENV};
pub use poly::{Mono, Poly};
pub use rational::Rational;
pub use scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("variable x{0} has no value")]
    MissingVariable(u32),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
}

/// Commutative ring with exact division where the quotient exists.
///
/// Arithmetic goes through named methods rather than `std::ops` so generic
/// code stays readable without a pile of reference bounds.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Whether nonzero elements are invertible. Picks the elimination strategy
    /// in determinant code.
    const IS_FIELD: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when `o` divides `self` exactly.
    fn div_exact(&self, o: &Self) -> Result<Self, ArithError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `(-1)^e * self`
    fn signed(&self, e: u64) -> Self {
        if e % 2 == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self, ArithError>;

    fn div(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&o.inv()?))
    }
}

/// Rings that receive rational constants: Q itself, F_p (when the denominator
/// is a unit) and polynomials over either.
pub trait FromRational: Ring {
    fn from_rational(q: &Rational) -> Result<Self, ArithError>;
}

/// Sign helper for the many `(-1)^e` factors.
pub fn sign(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}
