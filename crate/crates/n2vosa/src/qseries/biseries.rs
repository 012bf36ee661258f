use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::PuiseuxSeries;
use crate::scalar::{CycScalar, Rational};

/// Truncated series Σ c_{a,e} p^a q^{e/D}.
///
/// `p_bound` limits which p-exponents are reported and compared; products
/// keep every p-exponent so that later factors cannot resurrect dropped terms.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    den: i64,
    terms: BTreeMap<(i64, i64), CycScalar>,
    trunc: Option<Rational>,
    p_bound: i64,
}

impl BiSeries {
    pub fn zero(trunc: Option<Rational>, p_bound: i64) -> Self {
        BiSeries { den: 1, terms: BTreeMap::new(), trunc, p_bound }
    }

    /// Embeds a q-series at p-exponent `a`.
    pub fn from_q_series(s: &PuiseuxSeries, a: i64, p_bound: i64) -> Self {
        let mut out = Self::zero(s.trunc().cloned(), p_bound);
        for (e, c) in s.terms() {
            out.add_term(a, &e, c.clone());
        }
        out
    }

    pub fn p_bound(&self) -> i64 {
        self.p_bound
    }

    pub fn trunc(&self) -> Option<&Rational> {
        self.trunc.as_ref()
    }

    /// Lowers the truncation to `t` if that is smaller.
    pub fn with_trunc(mut self, t: Option<Rational>) -> Self {
        self.trunc = match (self.trunc.take(), t) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) | (None, x) => x,
        };
        if let Some(t) = &self.trunc {
            let limit = t * &Rational::from_int(self.den);
            self.terms.retain(|(_, e), _| Rational::from_int(*e) < limit);
        }
        self
    }

    /// Substitutes p ↦ p⁻¹.
    pub fn invert_p(&self) -> Self {
        let mut out = self.clone();
        out.terms = self.terms.iter().map(|((a, e), c)| ((-a, *e), c.clone())).collect();
        out
    }

    pub fn exp_den(&self) -> i64 {
        self.den
    }

    fn rebase(&mut self, den: i64) {
        if den == self.den {
            return;
        }
        let f = den / self.den;
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|((a, e), c)| ((a, e * f), c))
            .collect();
        self.den = den;
    }

    pub fn add_term(&mut self, a: i64, e: &Rational, c: CycScalar) {
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
        let key = (a, n * (l / d));
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Iterates ((p-exponent, q-exponent), coefficient) over |p| ≤ p_bound.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, Rational), &CycScalar)> + '_ {
        self.terms
            .iter()
            .filter(move |((a, _), _)| a.abs() <= self.p_bound)
            .map(move |((a, e), c)| ((*a, Rational::new(*e, self.den)), c))
    }

    pub fn coefficient(&self, a: i64, e: &Rational) -> CycScalar {
        let (n, d) = e.as_small().expect("exponent too large");
        let l = self.den.lcm(&d);
        if l != self.den {
            return CycScalar::zero();
        }
        self.terms.get(&(a, n * (l / d))).cloned().unwrap_or_default()
    }

    fn q_valuation(&self) -> Option<Rational> {
        self.terms.keys().map(|(_, e)| *e).min().map(|e| Rational::new(e, self.den))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p_bound = self.p_bound.max(other.p_bound);
        let (Some(va), Some(vb)) = (self.q_valuation(), other.q_valuation()) else {
            let t = match (&self.trunc, &other.trunc) {
                (Some(x), Some(y)) => Some(x.min(y).clone()),
                (x, None) | (None, x) => x.clone(),
            };
            return Self::zero(t, p_bound);
        };
        let trunc = match (&self.trunc, &other.trunc) {
            (Some(ta), Some(tb)) => Some((ta + &vb).min(tb + &va)),
            (Some(ta), None) => Some(ta + &vb),
            (None, Some(tb)) => Some(tb + &va),
            (None, None) => None,
        };
        let mut out = Self::zero(trunc, p_bound);
        let den = self.den.lcm(&other.den);
        out.den = den;
        let (fa, fb) = (den / self.den, den / other.den);
        let limit = out
            .trunc
            .as_ref()
            .map(|t| (t * &Rational::from_int(den)).ceil().to_i64().expect("truncation too large"));
        for ((pa, ea), ca) in &self.terms {
            for ((pb, eb), cb) in &other.terms {
                let e = ea * fa + eb * fb;
                if limit.is_some_and(|l| e >= l) {
                    continue;
                }
                let entry = out.terms.entry((pa + pb, e)).or_default();
                *entry += &(ca * cb);
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul_q(&self, s: &PuiseuxSeries) -> Self {
        self.mul(&Self::from_q_series(s, 0, self.p_bound))
    }

    /// First disagreement with |p| ≤ min p_bound, below the common truncation.
    pub fn first_difference(&self, other: &Self) -> Option<((i64, Rational), CycScalar, CycScalar)> {
        let bound = self.p_bound.min(other.p_bound);
        let t = match (&self.trunc, &other.trunc) {
            (Some(x), Some(y)) => Some(x.min(y).clone()),
            (x, None) | (None, x) => x.clone(),
        };
        let mut keys: Vec<(i64, Rational)> = self
            .terms()
            .chain(other.terms())
            .map(|(k, _)| k)
            .filter(|(a, e)| a.abs() <= bound && t.as_ref().is_none_or(|t| e < t))
            .collect();
        keys.sort_by(|x, y| (&x.1, x.0).cmp(&(&y.1, y.0)));
        keys.dedup();
        for (a, e) in keys {
            let x = self.coefficient(a, &e);
            let y = other.coefficient(a, &e);
            if x != y {
                return Some(((a, e), x, y));
            }
        }
        None
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms().map(|((a, e), c)| format!("({c}) * p^{a} q^{{{e}}}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })?;
        if let Some(t) = &self.trunc {
            write!(f, " + O(q^{{{t}}})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BiSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BiSeries", 4)?;
        st.serialize_field("exp_den", &self.den)?;
        let terms: Vec<(i64, i64, String)> = self
            .terms
            .iter()
            .filter(|((a, _), _)| a.abs() <= self.p_bound)
            .map(|((a, e), c)| (*a, *e, c.to_string()))
            .collect();
        st.serialize_field("terms", &terms)?;
        st.serialize_field("trunc", &self.trunc.as_ref().map(|t| t.to_string()))?;
        st.serialize_field("p_bound", &self.p_bound)?;
        st.end()
    }
}
