use std::collections::BTreeMap;
use std::fmt;

use exact_arith::{ArithError, Mono, Poly, Rational, Ring};

/// Laurent polynomial num · x^shift with num free of monomial factors.
///
/// Keeping the numerator content-free makes exact division decidable: a
/// content-free divisor divides a Laurent polynomial iff it divides the
/// numerator as an ordinary polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    num: Poly<Rational>,
    shift: BTreeMap<u32, i32>,
}

fn shift_poly(p: &Poly<Rational>, by: &BTreeMap<u32, i32>) -> Poly<Rational> {
    let len = by.keys().next_back().map_or(0, |&i| i as usize + 1);
    let mut exps = vec![0u16; len];
    for (&i, &e) in by {
        exps[i as usize] = u16::try_from(e).expect("nonnegative shift");
    }
    let m = Mono::from_exps(exps);
    Poly::from_terms(p.terms().iter().map(|(t, c)| (t.mul(&m), c.clone())))
}

impl Laurent {
    pub fn var(i: u32) -> Laurent {
        Laurent::normalize(Poly::var(i), BTreeMap::new())
    }

    pub fn from_poly(p: Poly<Rational>) -> Laurent {
        Laurent::normalize(p, BTreeMap::new())
    }

    fn normalize(num: Poly<Rational>, mut shift: BTreeMap<u32, i32>) -> Laurent {
        if num.is_zero() {
            return Laurent {
                num,
                shift: BTreeMap::new(),
            };
        }
        let mut content: BTreeMap<u32, u16> = num.terms()[0].0.support().collect();
        for (m, _) in &num.terms()[1..] {
            content.retain(|&i, e| {
                *e = (*e).min(m.exponent(i));
                *e > 0
            });
        }
        let num = if content.is_empty() {
            num
        } else {
            let len = *content.keys().next_back().unwrap() as usize + 1;
            let mut exps = vec![0u16; len];
            for (&i, &e) in &content {
                exps[i as usize] = e;
                *shift.entry(i).or_insert(0) += e as i32;
            }
            let g = Mono::from_exps(exps);
            Poly::from_terms(num.terms().iter().map(|(t, c)| (t.div(&g).unwrap(), c.clone())))
        };
        shift.retain(|_, e| *e != 0);
        Laurent { num, shift }
    }

    /// True when no variable has a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.shift.values().all(|&e| e >= 0)
    }

    pub fn to_poly(&self) -> Option<Poly<Rational>> {
        self.is_polynomial().then(|| shift_poly(&self.num, &self.shift))
    }

    pub fn numerator(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn shift(&self) -> &BTreeMap<u32, i32> {
        &self.shift
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        for (i, e) in &self.shift {
            write!(f, "*x{i}^{e}")?;
        }
        Ok(())
    }
}

impl Ring for Laurent {
    const IS_FIELD: bool = false;

    fn zero() -> Self {
        Laurent::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Laurent::from_poly(Poly::one())
    }
    fn from_i64(v: i64) -> Self {
        Laurent::from_poly(Poly::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        // bring both to the common lowest shift
        let mut low: BTreeMap<u32, i32> = BTreeMap::new();
        for (&i, &e) in self.shift.iter().chain(&o.shift) {
            let cur = low.entry(i).or_insert(0);
            *cur = (*cur).min(e);
        }
        let lift = |l: &Laurent| {
            let by: BTreeMap<u32, i32> = low
                .iter()
                .map(|(&i, &m)| (i, l.shift.get(&i).copied().unwrap_or(0) - m))
                .collect();
            shift_poly(&l.num, &by)
        };
        Laurent::normalize(lift(self).add(&lift(o)), low)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut shift = self.shift.clone();
        for (&i, &e) in &o.shift {
            *shift.entry(i).or_insert(0) += e;
        }
        Laurent::normalize(self.num.mul(&o.num), shift)
    }
    fn neg(&self) -> Self {
        Laurent {
            num: self.num.neg(),
            shift: self.shift.clone(),
        }
    }
    fn div_exact(&self, o: &Self) -> Result<Self, ArithError> {
        let q = self.num.div_exact(&o.num)?;
        let mut shift = self.shift.clone();
        for (&i, &e) in &o.shift {
            *shift.entry(i).or_insert(0) -= e;
        }
        Ok(Laurent::normalize(q, shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Laurent {
        Laurent::var(i)
    }

    #[test]
    fn monomials_divide() {
        let q = x(0).add(&x(1)).div_exact(&x(2)).unwrap();
        assert!(!q.is_polynomial());
        let back = q.mul(&x(2));
        assert_eq!(back, x(0).add(&x(1)));
        assert_eq!(back.to_poly().unwrap().to_string(), "x0 + x1");
    }

    #[test]
    fn addition_across_shifts() {
        let a = Laurent::one().div_exact(&x(0)).unwrap();
        let b = x(0);
        let s = a.add(&b).mul(&x(0));
        assert_eq!(s, x(0).mul(&x(0)).add(&Laurent::one()));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn non_monomial_division_can_fail() {
        let p = x(0).add(&x(1));
        assert_eq!(x(0).div_exact(&p), Err(ArithError::NotDivisible));
        let sq = p.mul(&p).mul(&x(3));
        assert_eq!(sq.div_exact(&p).unwrap(), p.mul(&x(3)));
    }
}
