use std::fmt;
use std::str::FromStr;

use crate::{ArithError, Fp, Poly, Rational};

/// Which ring a computation runs in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarKind {
    Rational,
    PrimeField,
    Polynomial,
}

/// A scalar at an IO boundary. Inside algorithms the concrete ring types are
/// used directly; this enum only tags values read from or written to text.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Rational(Rational),
    PrimeField(Fp),
    Polynomial(Poly<Rational>),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::PrimeField(_) => ScalarKind::PrimeField,
            Scalar::Polynomial(_) => ScalarKind::Polynomial,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::PrimeField(x) => write!(f, "{x}"),
            Scalar::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = ArithError;

    /// "r mod p" is a field element, anything mentioning a variable is a
    /// polynomial, the rest is a rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains("mod") {
            Ok(Scalar::PrimeField(s.parse()?))
        } else if s.contains('x') {
            Ok(Scalar::Polynomial(s.parse()?))
        } else {
            Ok(Scalar::Rational(s.parse()?))
        }
    }
}
