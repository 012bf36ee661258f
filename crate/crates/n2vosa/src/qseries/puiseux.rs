use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// Truncated series Σ c_e q^{e/D} with all exponents below `trunc`.
///
/// `trunc == None` marks an exact (finite) series.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    den: i64,
    terms: BTreeMap<i64, CycScalar>,
    trunc: Option<Rational>,
}

fn min_trunc(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}

fn add_opt(t: &Option<Rational>, v: &Rational) -> Option<Rational> {
    t.as_ref().map(|t| t + v)
}

impl PuiseuxSeries {
    pub fn zero(trunc: Option<Rational>) -> Self {
        PuiseuxSeries { den: 1, terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: Option<Rational>) -> Self {
        Self::monomial(CycScalar::one(), &Rational::zero(), trunc)
    }

    /// c · q^e, dropped if e ≥ trunc.
    pub fn monomial(c: CycScalar, e: &Rational, trunc: Option<Rational>) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(e, c);
        s
    }

    pub fn constant(c: CycScalar, trunc: Option<Rational>) -> Self {
        Self::monomial(c, &Rational::zero(), trunc)
    }

    /// Builds a series from (exponent, coefficient) pairs.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Rational, CycScalar)>,
        trunc: Option<Rational>,
    ) -> Self {
        let mut s = Self::zero(trunc);
        for (e, c) in terms {
            s.add_term(&e, c);
        }
        s
    }

    pub fn exp_den(&self) -> i64 {
        self.den
    }

    pub fn trunc(&self) -> Option<&Rational> {
        self.trunc.as_ref()
    }

    pub fn with_trunc(mut self, t: Option<Rational>) -> Self {
        self.trunc = min_trunc(&self.trunc, &t);
        self.drop_above();
        self
    }

    fn exponent(&self, e: i64) -> Rational {
        Rational::new(e, self.den)
    }

    /// Iterates (exponent, coefficient) in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &CycScalar)> + '_ {
        self.terms.iter().map(move |(e, c)| (self.exponent(*e), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &Rational) -> CycScalar {
        let (n, d) = e.as_small().expect("exponent too large");
        let l = self.den.lcm(&d);
        if l != self.den {
            return CycScalar::zero();
        }
        self.terms.get(&(n * (l / d))).cloned().unwrap_or_default()
    }

    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().map(|&e| self.exponent(e))
    }

    fn rebase(&mut self, den: i64) {
        if den == self.den {
            return;
        }
        let f = den / self.den;
        self.terms = std::mem::take(&mut self.terms).into_iter().map(|(e, c)| (e * f, c)).collect();
        self.den = den;
    }

    /// Adds c·q^e in place.
    pub fn add_term(&mut self, e: &Rational, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        if let Some(t) = &self.trunc {
            if e >= t {
                return;
            }
        }
        let (n, d) = e.as_small().expect("exponent too large");
        let l = self.den.lcm(&d);
        self.rebase(l);
        let key = n * (l / d);
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn drop_above(&mut self) {
        if let Some(t) = &self.trunc {
            let (n, d) = (t.numer(), t.denom());
            let den = self.den;
            // keep e/den < n/d  <=>  e*d < n*den
            self.terms.retain(|e, _| num_bigint::BigInt::from(*e) * &d < &n * den);
        }
    }

    fn normalize(mut self) -> Self {
        let g = self.terms.keys().fold(self.den, |g, e| g.gcd(e));
        if g > 1 {
            self.den /= g;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(e, c)| (e / g, c)).collect();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let mut a = self.clone();
        a.rebase(den);
        a.trunc = min_trunc(&self.trunc, &other.trunc);
        let f = den / other.den;
        for (e, c) in &other.terms {
            let key = e * f;
            let entry = a.terms.entry(key).or_default();
            *entry += c;
            if entry.is_zero() {
                a.terms.remove(&key);
            }
        }
        a.drop_above();
        a.normalize()
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            den: self.den,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc.clone());
        }
        PuiseuxSeries {
            den: self.den,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Multiplies by q^e.
    pub fn shift(&self, e: &Rational) -> Self {
        let mut out = Self::zero(add_opt(&self.trunc, e));
        for (x, c) in self.terms() {
            out.add_term(&(&x + e), c.clone());
        }
        out.normalize()
    }

    /// Product; a coefficient is kept only when both factors determine it,
    /// so the result is valid below min(Ta + vb, Tb + va).
    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation();
        let vb = other.valuation();
        let (va, vb) = match (va, vb) {
            (Some(va), Some(vb)) => (va, vb),
            (va, vb) => {
                let t = min_trunc(
                    &vb.and_then(|v| add_opt(&self.trunc, &v)).or(self.trunc.clone()),
                    &va.and_then(|v| add_opt(&other.trunc, &v)).or(other.trunc.clone()),
                );
                return Self::zero(t);
            }
        };
        let trunc = min_trunc(&add_opt(&self.trunc, &vb), &add_opt(&other.trunc, &va));
        let den = self.den.lcm(&other.den);
        let (fa, fb) = (den / self.den, den / other.den);
        let limit = trunc.as_ref().map(|t| {
            // numerators (over den) strictly below t
            (t * &Rational::from_int(den)).ceil().to_i64().expect("truncation too large")
        });
        let mut terms: BTreeMap<i64, CycScalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let ea = ea * fa;
            for (eb, cb) in &other.terms {
                let e = ea + eb * fb;
                if let Some(l) = limit {
                    if e >= l {
                        break;
                    }
                }
                let entry = terms.entry(e).or_default();
                *entry += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PuiseuxSeries { den, terms, trunc }.normalize()
    }

    /// Multiplicative inverse; truncation becomes T − 2v.
    pub fn reciprocal(&self) -> Result<Self, Error> {
        let (&e0, c0) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::NotAUnit("series has no nonzero term".into()))?;
        let v = self.exponent(e0);
        let c0inv = c0.inv()?;
        let den = self.den;
        let Some(t) = &self.trunc else {
            if self.terms.len() == 1 {
                return Ok(Self::monomial(c0inv, &-&v, None));
            }
            return Err(Error::NotAUnit("exact series with several terms has no finite inverse".into()));
        };
        let rel_t = t - &v;
        let n = (&rel_t * &Rational::from_int(den)).ceil().to_i64().expect("truncation too large").max(0) as usize;
        let u: Vec<(usize, CycScalar)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, c)| ((e - e0) as usize, c * &c0inv))
            .filter(|(e, _)| *e < n)
            .collect();
        let mut b: Vec<CycScalar> = vec![CycScalar::zero(); n];
        if n > 0 {
            b[0] = CycScalar::one();
        }
        for k in 1..n {
            let mut acc = CycScalar::zero();
            for (e, c) in &u {
                if *e > k {
                    break;
                }
                if !b[k - e].is_zero() {
                    acc -= &(c * &b[k - e]);
                }
            }
            b[k] = acc;
        }
        let mut out = PuiseuxSeries { den, terms: BTreeMap::new(), trunc: Some(&rel_t - &v) };
        let shift = -e0;
        for (k, c) in b.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(k as i64 + shift, &c * &c0inv);
            }
        }
        out.drop_above();
        Ok(out.normalize())
    }

    pub fn pow(&self, k: i64) -> Result<Self, Error> {
        let base = if k < 0 { self.reciprocal()? } else { self.clone() };
        let mut acc = Self::one(None);
        let mut b = base;
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// q ↦ q^scale.
    pub fn substitute(&self, scale: &Rational) -> Result<Self, Error> {
        if !scale.is_positive() {
            return Err(Error::Invalid(format!("substitution scale must be positive, got {scale}")));
        }
        let (sn, sd) = scale.as_small().ok_or_else(|| Error::Invalid("scale too large".into()))?;
        Ok(PuiseuxSeries {
            den: self.den * sd,
            terms: self.terms.iter().map(|(e, c)| (e * sn, c.clone())).collect(),
            trunc: self.trunc.as_ref().map(|t| t * scale),
        }
        .normalize())
    }

    /// Compares coefficients below the common truncation; returns the first
    /// disagreeing exponent with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Rational, CycScalar, CycScalar)> {
        let t = min_trunc(&self.trunc, &other.trunc);
        let diff = self.sub(other).with_trunc(t);
        let first = diff.terms().next().map(|(e, _)| e);
        first.map(|e| {
            let a = self.coefficient(&e);
            let b = other.coefficient(&e);
            (e, a, b)
        })
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("({c}) * q^{{{e}}}")).collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        if let Some(t) = &self.trunc {
            write!(f, " + O(q^{{{t}}})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PuiseuxSeries", 3)?;
        st.serialize_field("exp_den", &self.den)?;
        let terms: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        st.serialize_field("terms", &terms)?;
        st.serialize_field("trunc", &self.trunc.as_ref().map(|t| t.to_string()))?;
        st.end()
    }
}
