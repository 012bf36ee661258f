use std::fmt;
use std::sync::Arc;

use super::{Memo, ModeOp};
use crate::fock::{weight_of, Field, Monomial, Sector, State};
use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// One summand family of a quadratic operator. The summation variable p is
/// the index of the right-hand field and runs over its support.
#[derive(Clone, Debug)]
pub enum Term {
    /// Σ_{p > above} coef·(a + b·p) X(total − p) Y(p)
    Ordered { coef: CycScalar, a: Rational, b: Rational, x: Field, y: Field, total: Rational, above: Rational },
    /// Σ_p coef·X(total − p) Y(p) for fields whose modes supercommute.
    Free { coef: CycScalar, x: Field, y: Field, total: Rational },
    /// coef·X(m) Y(n)
    Single { coef: CycScalar, x: Field, m: Rational, y: Field, n: Rational },
}

/// A finite sum of normal-ordered bilinears in free-field modes plus a
/// constant.
pub struct QuadOperator {
    sector: Arc<Sector>,
    label: String,
    odd: bool,
    terms: Vec<Term>,
    constant: CycScalar,
    memo: Memo,
}

fn first_above(offset: &Rational, bound: &Rational) -> Rational {
    // smallest element of offset + ℤ strictly greater than bound
    let k = (bound - offset).floor();
    &(offset + &k) + &Rational::one()
}

fn first_at_least(offset: &Rational, bound: &Rational) -> Rational {
    let k = (bound - offset).ceil();
    offset + &k
}

impl QuadOperator {
    pub fn new(sector: Arc<Sector>, label: impl Into<String>, odd: bool) -> Self {
        QuadOperator { sector, label: label.into(), odd, terms: Vec::new(), constant: CycScalar::zero(), memo: Memo::default() }
    }

    pub fn sector(&self) -> &Arc<Sector> {
        &self.sector
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant(&self) -> &CycScalar {
        &self.constant
    }

    pub fn push(&mut self, t: Term) -> Result<(), Error> {
        let (x, y, total) = match &t {
            Term::Ordered { x, y, total, .. } | Term::Free { x, y, total, .. } => (x, y, total),
            Term::Single { x, m, y, n, .. } => (x, y, &(m + n)),
        };
        if x.is_odd() ^ y.is_odd() != self.odd {
            return Err(Error::Internal(format!("term parity disagrees with {}", self.label)));
        }
        let ox = self.sector.field_support(x)?;
        let oy = self.sector.field_support(y)?;
        if !(&(total - &ox) - &oy).is_integer() {
            return Err(Error::UnsupportedMode {
                symbol: format!("{} in {}", total, self.label),
                support: format!("Z+{}", (&ox + &oy).fract()),
            });
        }
        self.terms.push(t);
        Ok(())
    }

    pub fn add_constant(&mut self, c: &CycScalar) {
        self.constant += c;
    }

    fn apply_pair(
        &self,
        out: &mut State,
        coef: &CycScalar,
        x: &Field,
        xi: &Rational,
        y: &Field,
        yi: &Rational,
        m: &Monomial,
    ) -> Result<(), Error> {
        let ys = self.sector.apply_field_mono(y, yi, m)?;
        for (m2, c2) in ys.iter() {
            let xs = self.sector.apply_field_mono(x, xi, m2)?;
            out.add_scaled(&xs, &(coef * c2));
        }
        Ok(())
    }

    fn eval(&self, m: &Monomial) -> Result<State, Error> {
        let w = weight_of(m);
        let mut out = State::zero();
        for t in &self.terms {
            match t {
                Term::Ordered { coef, a, b, x, y, total, above } => {
                    let oy = self.sector.field_support(y)?;
                    let mut p = first_above(&oy, above);
                    while p <= w {
                        let c = coef.scale(&(a + &(b * &p)));
                        if !c.is_zero() {
                            self.apply_pair(&mut out, &c, x, &(total - &p), y, &p, m)?;
                        }
                        p = &p + &Rational::one();
                    }
                }
                Term::Free { coef, x, y, total } => {
                    let oy = self.sector.field_support(y)?;
                    let mut p = first_at_least(&oy, &(total - &w));
                    while p <= w {
                        self.apply_pair(&mut out, coef, x, &(total - &p), y, &p, m)?;
                        p = &p + &Rational::one();
                    }
                }
                Term::Single { coef, x, m: mi, y, n } => self.apply_pair(&mut out, coef, x, mi, y, n, m)?,
            }
        }
        out.add_term(m.clone(), &self.constant);
        Ok(out)
    }
}

impl ModeOp for QuadOperator {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error> {
        self.memo.get_or(m, || self.eval(m))
    }

    fn is_odd(&self) -> bool {
        self.odd
    }
}

impl fmt::Display for QuadOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for t in &self.terms {
            parts.push(match t {
                Term::Ordered { coef, a, b, x, y, total, above } => {
                    let weight = if b.is_zero() { format!("{a}") } else { format!("({a} + {b}p)") };
                    format!("({coef})*{weight} Σ_{{p>{above}}} {}({total}-p) {}(p)", x.name, y.name)
                }
                Term::Free { coef, x, y, total } => format!("({coef}) Σ_p {}({total}-p) {}(p)", x.name, y.name),
                Term::Single { coef, x, m, y, n } => format!("({coef}) {}({m}) {}({n})", x.name, y.name),
            });
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(format!("({})", self.constant));
        }
        write!(f, "{} = {}", self.label, parts.join(" + "))
    }
}
