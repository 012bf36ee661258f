use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// Small exact rational used for mode grades. Always reduced with a
/// positive denominator, so derived equality and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grade {
    num: i32,
    den: i32,
}

impl Grade {
    pub const ZERO: Grade = Grade { num: 0, den: 1 };

    pub fn to_rational(self) -> Rational {
        Rational::new(self.num as i64, self.den as i64)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }
}

impl TryFrom<&Rational> for Grade {
    type Error = Error;

    fn try_from(q: &Rational) -> Result<Self, Error> {
        let small = q.as_small().and_then(|(n, d)| Some((i32::try_from(n).ok()?, i32::try_from(d).ok()?)));
        let (num, den) = small.ok_or_else(|| Error::Invalid(format!("mode grade {q} out of range")))?;
        Ok(Grade { num, den })
    }
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i64 * other.den as i64).cmp(&(other.num as i64 * self.den as i64))
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Charge {
    Plain,
    Plus,
    Minus,
    Epsilon,
}

/// A creation operator: the mode of index `-grade` of the basis vector
/// selected by slot, charge and flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeKey {
    pub slot: u8,
    pub charge: Charge,
    pub flavor: u8,
    pub grade: Grade,
}

impl ModeKey {
    pub fn new(slot: u8, charge: Charge, flavor: u8, grade: &Rational) -> Result<Self, Error> {
        Ok(ModeKey { slot, charge, flavor, grade: Grade::try_from(grade)? })
    }

    pub fn grade(&self) -> Rational {
        self.grade.to_rational()
    }
}

impl Ord for ModeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.slot, self.charge, self.flavor)
            .cmp(&(other.slot, other.charge, other.flavor))
            .then_with(|| other.grade.cmp(&self.grade))
    }
}

impl PartialOrd for ModeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.charge {
            Charge::Plain => format!("a{}", self.flavor),
            Charge::Plus => format!("a{}+", self.flavor),
            Charge::Minus => format!("a{}-", self.flavor),
            Charge::Epsilon => "e".to_string(),
        };
        let slot = if self.slot == 0 { String::new() } else { format!("[{}]", self.slot) };
        write!(f, "{name}{slot}({})", -self.grade.to_rational())
    }
}

/// Canonically ordered product of creation operators applied to the
/// vacuum. Fermionic keys have multiplicity one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<(ModeKey, u16)>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[(ModeKey, u16)] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, key: &ModeKey) -> u16 {
        self.0.binary_search_by(|(k, _)| k.cmp(key)).map(|i| self.0[i].1).unwrap_or(0)
    }
}

/// Intrinsic weight: the sum of the grades.
pub fn weight_of(m: &Monomial) -> Rational {
    let mut w = Rational::zero();
    for (k, e) in &m.0 {
        let g = &k.grade() * &Rational::from_int(*e as i64);
        w += &g;
    }
    w
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in &self.0 {
            if *e == 1 {
                write!(f, "{k} ")?;
            } else {
                write!(f, "{k}^{e} ")?;
            }
        }
        write!(f, "|0>")
    }
}

/// Finite linear combination of monomials with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct State {
    terms: HashMap<Monomial, CycScalar>,
}

impl State {
    pub fn zero() -> Self {
        State::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(Monomial::vacuum())
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut s = State::zero();
        s.terms.insert(m, CycScalar::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &CycScalar)> {
        self.terms.iter()
    }

    /// Terms in canonical order.
    pub fn sorted(&self) -> Vec<(&Monomial, &CycScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &State, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn add(&mut self, other: &State) {
        self.add_scaled(other, &CycScalar::one());
    }

    pub fn scaled(&self, c: &CycScalar) -> State {
        let mut out = State::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn minus(&self, other: &State) -> State {
        let mut out = self.clone();
        out.add_scaled(other, &CycScalar::from_int(-1));
        out
    }

    /// Drops monomials of intrinsic weight above `cutoff`.
    pub fn truncated(&self, cutoff: &Rational) -> State {
        State {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| &weight_of(m) <= cutoff)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.sorted().into_iter().map(|(m, c)| format!("({c}) {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
