use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::{ArithError, Fp, FromRational, Rational, Ring};

/// Exponent vector. Position i holds the exponent of variable i; trailing
/// zeros are trimmed so equal monomials have equal representations.
///
/// The derived order compares total degree first and then the exponent
/// vectors lexicographically, which is graded lex with x0 > x1 > ...
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono {
    deg: u32,
    exps: Vec<u16>,
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(i: u32) -> Mono {
        let mut exps = vec![0; i as usize + 1];
        exps[i as usize] = 1;
        Mono { deg: 1, exps }
    }

    pub fn from_exps(mut exps: Vec<u16>) -> Mono {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { deg, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponent(&self, i: u32) -> u16 {
        self.exps.get(i as usize).copied().unwrap_or(0)
    }

    /// (variable, exponent) pairs with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (u32, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32, e))
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let (long, short) = if self.exps.len() >= o.exps.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut exps = long.exps.clone();
        for (e, &s) in exps.iter_mut().zip(&short.exps) {
            *e = e.checked_add(s).expect("exponent overflow");
        }
        Mono {
            deg: self.deg + o.deg,
            exps,
        }
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if o.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, &s) in exps.iter_mut().zip(&o.exps) {
            *e = e.checked_sub(s)?;
        }
        Some(Mono::from_exps(exps))
    }
}

/// How a coefficient ring prints and parses inside a polynomial.
pub trait Coefficient: Ring {
    /// (is_negative, magnitude text)
    fn split_sign(&self) -> (bool, String);
    fn parse_coeff(s: &str) -> Result<Self, ArithError>;
}

impl Coefficient for Rational {
    fn split_sign(&self) -> (bool, String) {
        let a = self.abs();
        let text = if a.is_integer() {
            a.numer().to_string()
        } else {
            a.to_string()
        };
        (self.is_negative(), text)
    }
    fn parse_coeff(s: &str) -> Result<Self, ArithError> {
        s.parse()
    }
}

impl Coefficient for Fp {
    fn split_sign(&self) -> (bool, String) {
        (false, self.residue().to_string())
    }
    fn parse_coeff(s: &str) -> Result<Self, ArithError> {
        s.parse()
    }
}

/// Sparse multivariate polynomial. Terms are sorted by decreasing monomial
/// and carry no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    terms: Vec<(Mono, C)>,
}

impl<C: Ring> Poly<C> {
    pub fn constant(c: C) -> Poly<C> {
        if c.is_zero() {
            Poly { terms: vec![] }
        } else {
            Poly {
                terms: vec![(Mono::one(), c)],
            }
        }
    }

    pub fn var(i: u32) -> Poly<C> {
        Poly {
            terms: vec![(Mono::var(i), C::one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, C)>) -> Poly<C> {
        let mut acc: HashMap<Mono, C> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Mono, C>) -> Poly<C> {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<u32> {
        let mut seen = std::collections::BTreeSet::new();
        for (m, _) in &self.terms {
            seen.extend(m.support().map(|(v, _)| v));
        }
        seen.into_iter().collect()
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        if c.is_zero() {
            return Poly { terms: vec![] };
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul(c)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Poly { terms }
    }

    fn merge(&self, o: &Poly<C>, negate: bool) -> Poly<C> {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let other = |c: &C| if negate { c.neg() } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), other(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (m.clone(), other(c))));
        Poly { terms: out }
    }

    /// Evaluate into any ring, given images of the variables and of the
    /// coefficients. Variable powers are cached per call.
    pub fn eval_with<T: Ring>(
        &self,
        var: &dyn Fn(u32) -> Result<T, ArithError>,
        coeff: &dyn Fn(&C) -> Result<T, ArithError>,
    ) -> Result<T, ArithError> {
        let mut powers: HashMap<u32, Vec<T>> = HashMap::new();
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c)?;
            for (v, e) in m.support() {
                let e = e as usize;
                if !powers.contains_key(&v) {
                    powers.insert(v, vec![T::one(), var(v)?]);
                }
                let pw = powers.get_mut(&v).unwrap();
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Coefficient-wise image in another coefficient ring.
    pub fn map_coeffs<D: Ring>(
        &self,
        f: &dyn Fn(&C) -> Result<D, ArithError>,
    ) -> Result<Poly<D>, ArithError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((m.clone(), d));
            }
        }
        Ok(Poly { terms })
    }
}

impl<C: Ring + Coefficient> Ring for Poly<C> {
    const IS_FIELD: bool = false;

    fn zero() -> Self {
        Poly { terms: vec![] }
    }
    fn one() -> Self {
        Poly::constant(C::one())
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(C::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }
    fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }
    fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 && o.terms[0].0.degree() == 0 {
            return self.scale(&o.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0.degree() == 0 {
            return o.scale(&self.terms[0].1);
        }
        let (a, b) = if self.terms.len() <= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut acc: HashMap<Mono, C> = HashMap::with_capacity((a.terms.len() * b.terms.len() / 2).min(1 << 16) + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }

    /// Division by leading terms; any nonzero remainder means the quotient
    /// does not exist.
    fn div_exact(&self, q: &Self) -> Result<Self, ArithError> {
        let (qm, qc) = match q.terms.first() {
            Some(t) => t.clone(),
            None => return Err(ArithError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if q.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let m = m.div(&qm).ok_or(ArithError::NotDivisible)?;
                terms.push((m, c.div_exact(&qc)?));
            }
            return Ok(Poly { terms });
        }
        let mut rem: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let tm = m.div(&qm).ok_or(ArithError::NotDivisible)?;
            let tc = c.div_exact(&qc)?;
            for (mq, cq) in &q.terms[1..] {
                let mm = tm.mul(mq);
                let prod = tc.mul(cq);
                let entry = rem.entry(mm);
                match entry {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get().sub(&prod);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod.neg());
                    }
                }
            }
            out.push((tm, tc));
        }
        Ok(Poly { terms: out })
    }
}

impl<C: Coefficient + FromRational> FromRational for Poly<C> {
    fn from_rational(q: &Rational) -> Result<Self, ArithError> {
        Ok(Poly::constant(C::from_rational(q)?))
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    /// Graded-lex, leading term first: `3*x0^2*x1 - 1/2*x2 + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.split_sign();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if mag != "1" || m.degree() == 0 {
                parts.push(mag);
            }
            for (v, e) in m.support() {
                if e == 1 {
                    parts.push(format!("x{v}"));
                } else {
                    parts.push(format!("x{v}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for Poly<C> {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms at top-level + and -
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !(cur.is_empty() || cur.ends_with('^')) {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        pieces.push((neg, cur));
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut coeff = C::one();
            let mut exps: Vec<u16> = Vec::new();
            for factor in piece.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (v, e) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u16>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    let v: usize = v.parse().map_err(|_| bad())?;
                    if exps.len() <= v {
                        exps.resize(v + 1, 0);
                    }
                    exps[v] += e;
                } else {
                    coeff = coeff.mul(&C::parse_coeff(factor)?);
                }
            }
            if neg {
                coeff = coeff.neg();
            }
            terms.push((Mono::from_exps(exps), coeff));
        }
        Ok(Poly::from_terms(terms))
    }
}
