use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::{ArithError, Field, FromRational, Rational, Ring};

/// 2^61 - 1. The one place the default modulus lives.
pub const DEFAULT_MODULUS: u64 = (1 << 61) - 1;

/// Environment variable that replaces the default modulus. Must name a prime
/// below 2^63.
pub const MODULUS_ENV: &str = "GCS_MODULUS";

static MODULUS: OnceLock<u64> = OnceLock::new();

/// The modulus shared by every `Fp` in this process.
///
/// Panics at first use if the environment override is not a prime in range;
/// a silently wrong field would make every randomized check meaningless.
pub fn modulus() -> u64 {
    *MODULUS.get_or_init(|| match std::env::var(MODULUS_ENV) {
        Ok(s) => {
            let p: u64 = s
                .trim()
                .parse()
                .unwrap_or_else(|_| panic!("{MODULUS_ENV}={s} is not an integer"));
            assert!(p < (1 << 63), "{MODULUS_ENV} must be below 2^63");
            assert!(is_prime(p), "{MODULUS_ENV}={p} is not prime");
            p
        }
        Err(_) => DEFAULT_MODULUS,
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Element of F_p, residue kept in [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Fp {
        Fp(v % modulus())
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    pub fn from_bigint(v: &BigInt) -> Fp {
        let p = BigInt::from(modulus());
        let r = v.mod_floor(&p);
        Fp(r.to_u64().expect("reduced residue fits"))
    }
}

impl Ring for Fp {
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        let p = modulus() as i128;
        Fp((v as i128).rem_euclid(p) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        let p = modulus();
        Fp(if s >= p { s - p } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(self.0 + modulus() - o.0)
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(mul_mod(self.0, o.0, modulus()))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(modulus() - self.0)
        }
    }
    fn div_exact(&self, o: &Self) -> Result<Self, ArithError> {
        self.div(o)
    }
    fn pow(&self, e: u64) -> Self {
        Fp(pow_mod(self.0, e, modulus()))
    }
}

impl Field for Fp {
    fn inv(&self) -> Result<Self, ArithError> {
        if self.0 == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Fp(pow_mod(self.0, modulus() - 2, modulus())))
    }
}

impl FromRational for Fp {
    fn from_rational(q: &Rational) -> Result<Self, ArithError> {
        Fp::from_bigint(q.numer()).div(&Fp::from_bigint(q.denom()))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, modulus())
    }
}

impl FromStr for Fp {
    type Err = ArithError;

    /// "r mod p" (p must equal the active modulus) or a bare integer, which
    /// is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        match s.split_once("mod") {
            Some((r, p)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                if p != modulus() {
                    return Err(ArithError::RingMismatch(format!(
                        "modulus {p} differs from active modulus {}",
                        modulus()
                    )));
                }
                let r: BigInt = r.trim().parse().map_err(|_| bad())?;
                if r.is_negative() || r >= BigInt::from(p) {
                    return Err(bad());
                }
                Ok(Fp::from_bigint(&r))
            }
            None => {
                let r: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(Fp::from_bigint(&r))
            }
        }
    }
}
