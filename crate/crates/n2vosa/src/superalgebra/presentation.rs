use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// Generator families of the superconformal algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    L,
    J,
    Gp,
    Gm,
    G1,
    G2,
    GN1,
}

impl Family {
    pub fn is_odd(self) -> bool {
        !matches!(self, Family::L | Family::J)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::J => "J",
            Family::Gp => "G+",
            Family::Gm => "G-",
            Family::G1 => "G1",
            Family::G2 => "G2",
            Family::GN1 => "G",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub family: Family,
    pub index: Rational,
}

impl GenSymbol {
    pub fn new(family: Family, index: Rational) -> Self {
        GenSymbol { family, index }
    }

    pub fn is_odd(&self) -> bool {
        self.family.is_odd()
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family.name(), self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    Virasoro,
    N1NS,
    N1Ramond,
    /// Stored with t reduced to [0, 1).
    N2Shifted(Rational),
    N2Mirror,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Homogeneous,
    Nonhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub tag: Tag,
    pub basis: Basis,
}

/// Finite linear combination of generators plus a multiple of the central
/// element Z.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgElement {
    terms: BTreeMap<GenSymbol, CycScalar>,
    central: CycScalar,
}

impl AlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(family: Family, index: Rational) -> Self {
        Self::from_symbol(GenSymbol::new(family, index))
    }

    pub fn from_symbol(s: GenSymbol) -> Self {
        let mut e = Self::zero();
        e.terms.insert(s, CycScalar::one());
        e
    }

    pub fn central(c: CycScalar) -> Self {
        AlgElement { terms: BTreeMap::new(), central: c }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenSymbol, &CycScalar)> {
        self.terms.iter()
    }

    pub fn central_coeff(&self) -> &CycScalar {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn add_symbol(&mut self, s: GenSymbol, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add_central(&mut self, c: &CycScalar) {
        self.central += c;
    }

    pub fn add_scaled(&mut self, other: &AlgElement, c: &CycScalar) {
        for (s, x) in &other.terms {
            self.add_symbol(s.clone(), &(x * c));
        }
        self.central += &(&other.central * c);
    }

    pub fn plus(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(other, &CycScalar::one());
        out
    }

    pub fn minus(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(other, &CycScalar::from_int(-1));
        out
    }

    pub fn scaled(&self, c: &CycScalar) -> AlgElement {
        let mut out = AlgElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Parity when homogeneous: Some(false) even, Some(true) odd.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(GenSymbol::is_odd);
        let first = it.next().unwrap_or(false);
        if !self.central.is_zero() && first {
            return None;
        }
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| if c.is_one() { s.to_string() } else { format!("({c})*{s}") })
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})*Z", self.central));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn c(q: Rational) -> CycScalar {
    CycScalar::from_rational(q)
}

impl Presentation {
    pub fn new(tag: Tag, basis: Basis) -> Result<Self, Error> {
        let tag = match tag {
            Tag::N2Shifted(t) => Tag::N2Shifted(t.fract()),
            other => other,
        };
        match (&tag, basis) {
            (Tag::N2Shifted(t), Basis::Nonhomogeneous) if !(t * &Rational::from_int(2)).is_integer() => {
                Err(Error::Invalid(format!(
                    "the nonhomogeneous basis of the shifted algebra needs 2t integral, got t = {t}"
                )))
            }
            (Tag::N2Mirror, Basis::Homogeneous) => {
                Err(Error::Invalid("the mirror-twisted algebra has no homogeneous basis".into()))
            }
            _ => Ok(Presentation { tag, basis }),
        }
    }

    pub fn virasoro() -> Self {
        Presentation { tag: Tag::Virasoro, basis: Basis::Homogeneous }
    }

    pub fn n1_ns() -> Self {
        Presentation { tag: Tag::N1NS, basis: Basis::Homogeneous }
    }

    pub fn n1_ramond() -> Self {
        Presentation { tag: Tag::N1Ramond, basis: Basis::Homogeneous }
    }

    pub fn n2_shifted(t: Rational) -> Self {
        Self::new(Tag::N2Shifted(t), Basis::Homogeneous).unwrap()
    }

    pub fn n2_shifted_nonhomogeneous(t: Rational) -> Result<Self, Error> {
        Self::new(Tag::N2Shifted(t), Basis::Nonhomogeneous)
    }

    pub fn n2_mirror() -> Self {
        Presentation { tag: Tag::N2Mirror, basis: Basis::Nonhomogeneous }
    }

    pub fn families(&self) -> Vec<Family> {
        use Family::*;
        match (&self.tag, self.basis) {
            (Tag::Virasoro, _) => vec![L],
            (Tag::N1NS | Tag::N1Ramond, _) => vec![L, GN1],
            (Tag::N2Shifted(_), Basis::Homogeneous) => vec![L, J, Gp, Gm],
            (Tag::N2Shifted(_) | Tag::N2Mirror, Basis::Nonhomogeneous) => vec![L, J, G1, G2],
            (Tag::N2Mirror, Basis::Homogeneous) => unreachable!(),
        }
    }

    /// Offset o in [0, 1) such that the family's indices are o + ℤ.
    pub fn coset(&self, family: Family) -> Option<Rational> {
        if !self.families().contains(&family) {
            return None;
        }
        let half = r(1, 2);
        Some(match (family, &self.tag) {
            (Family::L, _) => Rational::zero(),
            (Family::J, Tag::N2Mirror) => half,
            (Family::J, _) => Rational::zero(),
            (Family::GN1, Tag::N1NS) => half,
            (Family::GN1, _) => Rational::zero(),
            (Family::G1, Tag::N2Mirror) => half,
            (Family::G2, Tag::N2Mirror) => Rational::zero(),
            (Family::Gp | Family::G1 | Family::G2, Tag::N2Shifted(t)) => (&half + t).fract(),
            (Family::Gm, Tag::N2Shifted(t)) => (&half - t).fract(),
            _ => unreachable!(),
        })
    }

    pub fn supports(&self, s: &GenSymbol) -> bool {
        self.coset(s.family).is_some_and(|o| (&s.index - &o).is_integer())
    }

    pub fn support_description(&self, family: Family) -> String {
        match self.coset(family) {
            None => format!("{} is not a generator of {}", family.name(), self),
            Some(o) if o.is_zero() => "Z".into(),
            Some(o) => format!("Z+{o}"),
        }
    }

    pub fn check(&self, s: &GenSymbol) -> Result<(), Error> {
        if self.supports(s) {
            Ok(())
        } else {
            Err(Error::UnsupportedMode {
                symbol: s.to_string(),
                support: self.support_description(s.family),
            })
        }
    }

    /// All generators with |index| ≤ bound.
    pub fn generators(&self, bound: &Rational) -> Vec<GenSymbol> {
        let mut out = Vec::new();
        for f in self.families() {
            let o = self.coset(f).unwrap();
            let lo = (-(bound + &o)).ceil().to_i64().unwrap();
            let hi = (bound - &o).floor().to_i64().unwrap();
            for k in lo..=hi {
                out.push(GenSymbol::new(f, &Rational::from_int(k) + &o));
            }
        }
        out
    }

    /// Bracket of two generators.
    pub fn bracket_gen(&self, x: &GenSymbol, y: &GenSymbol) -> Result<AlgElement, Error> {
        self.check(x)?;
        self.check(y)?;
        if x.family <= y.family {
            Ok(table(x, y))
        } else {
            let sign = if x.is_odd() && y.is_odd() { -1 } else { 1 };
            Ok(table(y, x).scaled(&CycScalar::from_int(-sign)))
        }
    }

    /// Bilinear extension; Z is central.
    pub fn bracket(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement, Error> {
        let mut out = AlgElement::zero();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                out.add_scaled(&self.bracket_gen(x, y)?, &(cx * cy));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = match self.basis {
            Basis::Homogeneous => "",
            Basis::Nonhomogeneous => " (nonhomogeneous)",
        };
        match &self.tag {
            Tag::Virasoro => write!(f, "Virasoro"),
            Tag::N1NS => write!(f, "N=1 Neveu-Schwarz"),
            Tag::N1Ramond => write!(f, "N=1 Ramond"),
            Tag::N2Shifted(t) => write!(f, "N=2 {t}-shifted{basis}"),
            Tag::N2Mirror => write!(f, "N=2 mirror-twisted"),
        }
    }
}

/// Structure constants for x.family ≤ y.family.
fn table(x: &GenSymbol, y: &GenSymbol) -> AlgElement {
    use Family::*;
    let (m, n) = (&x.index, &y.index);
    let sum = m + n;
    let delta = sum.is_zero();
    let mut out = AlgElement::zero();
    let i = CycScalar::i();
    // 2L_{r+s} + (1/3)(r² − 1/4)δ Z
    let g_anticomm = |out: &mut AlgElement, r: &Rational| {
        out.add_symbol(GenSymbol::new(L, sum.clone()), &CycScalar::from_int(2));
        if delta {
            out.add_central(&c(&(&(r * r) - &Rational::new(1, 4)) * &Rational::new(1, 3)));
        }
    };
    match (x.family, y.family) {
        (L, L) => {
            out.add_symbol(GenSymbol::new(L, sum.clone()), &c(m - n));
            if delta {
                out.add_central(&c(&(&(&(m * m) * m) - m) * &Rational::new(1, 12)));
            }
        }
        (L, J) => out.add_symbol(GenSymbol::new(J, sum.clone()), &c(-n)),
        (L, g) => out.add_symbol(GenSymbol::new(g, sum.clone()), &c(&(m * &Rational::new(1, 2)) - n)),
        (J, J) => {
            if delta {
                out.add_central(&c(m * &Rational::new(1, 3)));
            }
        }
        (J, Gp) => out.add_symbol(GenSymbol::new(Gp, sum.clone()), &CycScalar::one()),
        (J, Gm) => out.add_symbol(GenSymbol::new(Gm, sum.clone()), &CycScalar::from_int(-1)),
        (J, G1) => out.add_symbol(GenSymbol::new(G2, sum.clone()), &-&i),
        (J, G2) => out.add_symbol(GenSymbol::new(G1, sum.clone()), &i),
        (Gp, Gp) | (Gm, Gm) => {}
        (Gp, Gm) => {
            g_anticomm(&mut out, m);
            out.add_symbol(GenSymbol::new(J, sum.clone()), &c(m - n));
        }
        (G1, G1) | (G2, G2) | (GN1, GN1) => g_anticomm(&mut out, m),
        (G1, G2) => out.add_symbol(GenSymbol::new(J, sum.clone()), &(&-&i * &c(m - n))),
        (a, b) => unreachable!("no bracket between {a:?} and {b:?}"),
    }
    out
}
