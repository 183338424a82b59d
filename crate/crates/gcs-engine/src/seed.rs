use std::collections::BTreeMap;
use std::fmt;

use exact_arith::{ArithError, Ring};
use serde::{Deserialize, Serialize};

use crate::{GQuiver, GcsError};

/// Integer multiple of a monomial in frozen variables, keyed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: i64,
    pub exps: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial {
            coeff: 1,
            exps: BTreeMap::new(),
        }
    }

    pub fn var(i: usize) -> Monomial {
        Monomial {
            coeff: 1,
            exps: BTreeMap::from([(i, 1)]),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeff == 1 && self.exps.is_empty()
    }

    pub fn eval<T: Ring>(&self, values: &[T]) -> T {
        self.exps
            .iter()
            .fold(T::from_i64(self.coeff), |acc, (&i, &e)| acc.mul(&values[i].pow(e as u64)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        match self.coeff {
            1 => {}
            -1 => write!(f, "-")?,
            c => write!(f, "{c}*")?,
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// p_{k0}, ..., p_{k,d_k} per special vertex. Vertices without an entry
/// carry the trivial string.
pub type Strings = BTreeMap<usize, Vec<Monomial>>;

/// Reverse the string at k.
pub fn coeff_mutate(strings: &Strings, k: usize) -> Strings {
    let mut out = strings.clone();
    if let Some(s) = out.get_mut(&k) {
        s.reverse();
    }
    out
}

/// u_{k;>}, u_{k;<}, v_{k;>}^{[r]}, v_{k;<}^{[r]}
#[derive(Clone, Debug, PartialEq)]
pub struct TauMonomials<T> {
    pub u_gt: T,
    pub u_lt: T,
    pub v_gt: T,
    pub v_lt: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedSeed<T> {
    pub quiver: GQuiver,
    pub strings: Strings,
    pub values: Vec<T>,
}

impl<T: Ring> ExtendedSeed<T> {
    pub fn new(quiver: GQuiver, values: Vec<T>) -> Result<ExtendedSeed<T>, GcsError> {
        if values.len() != quiver.len() {
            return Err(GcsError::Invalid(format!(
                "{} values for {} vertices",
                values.len(),
                quiver.len()
            )));
        }
        Ok(ExtendedSeed {
            quiver,
            strings: Strings::new(),
            values,
        })
    }

    pub fn set_string(&mut self, k: usize, s: Vec<Monomial>) -> Result<(), GcsError> {
        if k >= self.quiver.len() {
            return Err(GcsError::UnknownVertex(k));
        }
        let d = self.quiver.mult(k) as usize;
        if s.len() != d + 1 || !s[0].is_one() || !s[d].is_one() {
            return Err(GcsError::Invalid(format!(
                "string at {k} needs {} entries with unit ends",
                d + 1
            )));
        }
        self.strings.insert(k, s);
        Ok(())
    }

    pub fn string(&self, k: usize) -> Vec<Monomial> {
        self.strings
            .get(&k)
            .cloned()
            .unwrap_or_else(|| vec![Monomial::one(); self.quiver.mult(k) as usize + 1])
    }

    pub fn tau_monomials(&self, k: usize, r: u32) -> Result<TauMonomials<T>, GcsError> {
        let q = &self.quiver;
        q.check_mutable(k)?;
        let d = q.mult(k);
        if r > d {
            return Err(GcsError::Invalid(format!("r = {r} exceeds d = {d}")));
        }
        let side = |nbrs: Vec<(usize, u32)>| {
            let mut u = T::one();
            let mut v = T::one();
            for (j, b) in nbrs {
                if q.is_frozen(j) {
                    v = v.mul(&self.values[j].pow((r * b / d) as u64));
                } else {
                    u = u.mul(&self.values[j].pow(b as u64));
                }
            }
            (u, v)
        };
        let (u_gt, v_gt) = side(q.out_edges(k));
        let (u_lt, v_lt) = side(q.in_edges(k));
        Ok(TauMonomials {
            u_gt,
            u_lt,
            v_gt,
            v_lt,
        })
    }

    /// Σ_r p_kr u_>^r v_>^{[r]} u_<^{d−r} v_<^{[d−r]}
    pub fn exchange_polynomial(&self, k: usize) -> Result<T, GcsError> {
        let d = self.quiver.mult(k);
        let p = self.string(k);
        let mut acc = T::zero();
        for r in 0..=d {
            let fwd = self.tau_monomials(k, r)?;
            let back = self.tau_monomials(k, d - r)?;
            let term = p[r as usize]
                .eval(&self.values)
                .mul(&fwd.u_gt.pow(r as u64))
                .mul(&fwd.v_gt)
                .mul(&back.u_lt.pow((d - r) as u64))
                .mul(&back.v_lt);
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// The new value x_k' = exchange polynomial / x_k.
    pub fn generalized_exchange(&self, k: usize) -> Result<T, GcsError> {
        let num = self.exchange_polynomial(k)?;
        if self.values[k].is_zero() {
            return Err(GcsError::ZeroClusterValue(k));
        }
        num.div_exact(&self.values[k]).map_err(|e| match e {
            ArithError::NotDivisible => GcsError::NotDivisible(k),
            ArithError::DivisionByZero => GcsError::ZeroClusterValue(k),
            e => GcsError::Arith(e),
        })
    }

    pub fn mutate(&self, k: usize) -> Result<ExtendedSeed<T>, GcsError> {
        let x = self.generalized_exchange(k)?;
        let mut values = self.values.clone();
        values[k] = x;
        Ok(ExtendedSeed {
            quiver: self.quiver.mutate(k)?,
            strings: coeff_mutate(&self.strings, k),
            values,
        })
    }

    pub fn apply_sequence(&self, ks: &[usize]) -> Result<ExtendedSeed<T>, GcsError> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Same seed with values pushed through a ring map.
    pub fn map_values<U: Ring>(&self, f: impl Fn(&T) -> U) -> ExtendedSeed<U> {
        ExtendedSeed {
            quiver: self.quiver.clone(),
            strings: self.strings.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}
