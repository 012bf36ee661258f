use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{ModeOp, SparseMatrix};
use crate::fock::{weight_of, Basis, Field, Monomial, Sector, State};
use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// The modes u_q of a (twisted) vertex operator Y^g(u, x) = Σ u_q x^{-q-1}.
pub trait ModeFamily: Send + Sync {
    /// Conformal weight of u.
    fn weight(&self) -> Rational;

    fn is_odd(&self) -> bool;

    /// Offset o with the nonzero modes in o + ℤ.
    fn coset(&self) -> Rational;

    /// u_q applied to a monomial; zero off the coset.
    fn apply_mode(&self, q: &Rational, m: &Monomial) -> Result<State, Error>;
}

fn on_coset(q: &Rational, o: &Rational) -> bool {
    (q - o).is_integer()
}

/// Y^g(1, x) = Id.
pub struct VacuumFamily;

impl ModeFamily for VacuumFamily {
    fn weight(&self) -> Rational {
        Rational::zero()
    }

    fn is_odd(&self) -> bool {
        false
    }

    fn coset(&self) -> Rational {
        Rational::zero()
    }

    fn apply_mode(&self, q: &Rational, m: &Monomial) -> Result<State, Error> {
        Ok(if *q == Rational::from_int(-1) { State::monomial(m.clone()) } else { State::zero() })
    }
}

/// The twisted field of a free generator, u_q = field(q + 1 − Δ).
pub struct FieldFamily {
    sector: Arc<Sector>,
    field: Field,
    coset: Rational,
}

impl FieldFamily {
    pub fn new(sector: Arc<Sector>, field: Field) -> Result<Self, Error> {
        let o = sector.field_support(&field)?;
        let coset = (&(&o - &Rational::one()) + &field.weight()).fract();
        Ok(FieldFamily { sector, field, coset })
    }
}

impl ModeFamily for FieldFamily {
    fn weight(&self) -> Rational {
        self.field.weight()
    }

    fn is_odd(&self) -> bool {
        self.field.is_odd()
    }

    fn coset(&self) -> Rational {
        self.coset.clone()
    }

    fn apply_mode(&self, q: &Rational, m: &Monomial) -> Result<State, Error> {
        if !on_coset(q, &self.coset) {
            return Ok(State::zero());
        }
        let index = &(q + &Rational::one()) - &self.field.weight();
        self.sector.apply_field_mono(&self.field, &index, m)
    }
}

/// Σ c_k Y^g(u_k, x) for states u_k of equal weight and parity.
pub struct SumFamily {
    parts: Vec<(CycScalar, Arc<dyn ModeFamily>)>,
}

impl SumFamily {
    pub fn new(parts: Vec<(CycScalar, Arc<dyn ModeFamily>)>) -> Result<Self, Error> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty sum of fields".into()))?;
        let (w, odd, o) = (first.1.weight(), first.1.is_odd(), first.1.coset());
        if parts.iter().any(|(_, f)| f.weight() != w || f.is_odd() != odd || f.coset() != o) {
            return Err(Error::Invalid("summands differ in weight, parity or mode support".into()));
        }
        Ok(SumFamily { parts })
    }
}

impl ModeFamily for SumFamily {
    fn weight(&self) -> Rational {
        self.parts[0].1.weight()
    }

    fn is_odd(&self) -> bool {
        self.parts[0].1.is_odd()
    }

    fn coset(&self) -> Rational {
        self.parts[0].1.coset()
    }

    fn apply_mode(&self, q: &Rational, m: &Monomial) -> Result<State, Error> {
        let mut out = State::zero();
        for (c, f) in &self.parts {
            out.add_scaled(&f.apply_mode(q, m)?, c);
        }
        Ok(out)
    }
}

/// Modes known only as matrices on a truncated basis.
pub struct TableFamily {
    basis: Arc<Basis>,
    modes: HashMap<Rational, SparseMatrix>,
    weight: Rational,
    odd: bool,
    coset: Rational,
}

impl TableFamily {
    pub fn new(
        basis: Arc<Basis>,
        modes: HashMap<Rational, SparseMatrix>,
        weight: Rational,
        odd: bool,
        coset: Rational,
    ) -> Self {
        TableFamily { basis, modes, weight, odd, coset }
    }

    /// Tabulates another family on `basis` for the listed modes.
    pub fn tabulate(family: &dyn ModeFamily, basis: Arc<Basis>, qs: &[Rational]) -> Result<Self, Error> {
        let mut modes = HashMap::new();
        for q in qs {
            let op = FamilyMode::new_unchecked(family, q.clone());
            modes.insert(q.clone(), super::to_matrix(&op, &basis)?);
        }
        Ok(TableFamily::new(basis, modes, family.weight(), family.is_odd(), family.coset()))
    }
}

impl ModeFamily for TableFamily {
    fn weight(&self) -> Rational {
        self.weight.clone()
    }

    fn is_odd(&self) -> bool {
        self.odd
    }

    fn coset(&self) -> Rational {
        self.coset.clone()
    }

    fn apply_mode(&self, q: &Rational, m: &Monomial) -> Result<State, Error> {
        if !on_coset(q, &self.coset) {
            return Ok(State::zero());
        }
        // modes lowering the weight of m below zero vanish without a table entry
        let w = weight_of(m);
        if &(q - &self.weight) + &Rational::one() > w {
            return Ok(State::zero());
        }
        let mat = self.modes.get(q).ok_or_else(|| {
            Error::TooShallow(format!("mode {q} of the target is not tabulated; required depth {q}"))
        })?;
        let j = self.basis.position(m).ok_or_else(|| {
            Error::TooShallow(format!("state {m} lies above the tabulated cutoff {}", self.basis.cutoff()))
        })?;
        let mut out = State::zero();
        for (i, c) in mat.column(j) {
            out.add_term(self.basis.monomials()[*i].clone(), c);
        }
        Ok(out)
    }
}

/// Y^g(a_p u, x) for a free generator a with twisted modes in s + ℤ.
pub struct IterateFamily {
    sector: Arc<Sector>,
    gen: Field,
    s: Rational,
    p: i64,
    target: Arc<dyn ModeFamily>,
    memo: RwLock<HashMap<(Rational, Monomial), State>>,
}

impl IterateFamily {
    /// a_m = gen(m + 1 − Δ)
    fn gen_mode(&self, mi: &Rational, m: &Monomial) -> Result<State, Error> {
        let index = &(mi + &Rational::one()) - &self.gen.weight();
        self.sector.apply_field_mono(&self.gen, &index, m)
    }

    fn apply_on(&self, f: impl Fn(&Monomial) -> Result<State, Error>, s: &State) -> Result<State, Error> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&f(m)?, c);
        }
        Ok(out)
    }

    fn eval(&self, q: &Rational, m: &Monomial) -> Result<State, Error> {
        let w = weight_of(m);
        let wa = self.gen.weight();
        let wu = self.target.weight();
        let one = Rational::one();
        let s = &self.s;
        let n_loc = ((&(&wa + &wu) - &one).floor().to_i64().unwrap() + 1).max(0);
        let koszul = if self.gen.is_odd() && self.target.is_odd() { -1 } else { 1 };
        let mut out = State::zero();
        for i in 0..(n_loc - self.p).max(0) {
            let k = self.p + i;
            let kq = Rational::from_int(k);
            let ci = s.binomial(i as u32);
            if ci.is_zero() {
                continue;
            }
            let ci = if i % 2 == 0 { ci } else { -ci };
            // a_{s+p-l} u_{q-s+l}: u lowers weight by q - s + l - wt u + 1 ≤ w
            let l_max1 = (&(&(&(&w + &wu) - &one) - q) + s).floor().to_i64().unwrap();
            let l_top1 = if k >= 0 { l_max1.min(k) } else { l_max1 };
            for l in 0..=l_top1.max(-1) {
                let c = &(&ci * &kq.binomial(l as u32)) * &Rational::from_int(if l % 2 == 0 { 1 } else { -1 });
                if c.is_zero() {
                    continue;
                }
                let lq = Rational::from_int(l);
                let uq = &(q - s) + &lq;
                let us = self.target.apply_mode(&uq, m)?;
                if us.is_zero() {
                    continue;
                }
                let am = &(s + &Rational::from_int(self.p)) - &lq;
                let r = self.apply_on(|x| self.gen_mode(&am, x), &us)?;
                out.add_scaled(&r, &CycScalar::from(c));
            }
            // -(-1)^{|a||u|} (-1)^{k-l} C(k,l) u_{q+k-l-s} a_{s-i+l}
            let l_max2 = (&(&(&(&w + &wa) - &one) - s) + &Rational::from_int(i)).floor().to_i64().unwrap();
            let l_top2 = if k >= 0 { l_max2.min(k) } else { l_max2 };
            for l in 0..=l_top2.max(-1) {
                let sign = if (k - l).rem_euclid(2) == 0 { 1 } else { -1 };
                let c = &(&ci * &kq.binomial(l as u32)) * &Rational::from_int(-koszul * sign);
                if c.is_zero() {
                    continue;
                }
                let lq = Rational::from_int(l);
                let am = &(s - &Rational::from_int(i)) + &lq;
                let a_s = self.gen_mode(&am, m)?;
                if a_s.is_zero() {
                    continue;
                }
                let uq = &(&(q + &kq) - &lq) - s;
                let r = self.apply_on(|x| self.target.apply_mode(&uq, x), &a_s)?;
                out.add_scaled(&r, &CycScalar::from(c));
            }
        }
        Ok(out)
    }
}

impl ModeFamily for IterateFamily {
    fn weight(&self) -> Rational {
        &(&(&self.gen.weight() + &self.target.weight()) - &Rational::from_int(self.p)) - &Rational::one()
    }

    fn is_odd(&self) -> bool {
        self.gen.is_odd() ^ self.target.is_odd()
    }

    fn coset(&self) -> Rational {
        (&self.target.coset() + &self.s).fract()
    }

    fn apply_mode(&self, q: &Rational, m: &Monomial) -> Result<State, Error> {
        if !on_coset(q, &self.coset()) {
            return Ok(State::zero());
        }
        let key = (q.clone(), m.clone());
        if let Some(s) = self.memo.read().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = self.eval(q, m)?;
        self.memo.write().unwrap().insert(key, s.clone());
        Ok(s)
    }
}

/// The twisted vertex operator of gen(−n)u from that of u, by the iterate
/// formula with (x₁ − x₀)^s expanded binomially. `s` is any representative of
/// the twisted mode support of gen, shifted by its weight.
pub fn residue_mode(
    sector: &Arc<Sector>,
    gen: &Field,
    n: &Rational,
    target: Arc<dyn ModeFamily>,
    s: &Rational,
) -> Result<Arc<dyn ModeFamily>, Error> {
    let p = &(&(-n) - &Rational::one()) + &gen.weight();
    let p = p
        .to_i64()
        .ok_or_else(|| Error::Invalid(format!("{}(-{n}) is not a mode of the untwisted generator", gen.name)))?;
    let o = sector.field_support(gen)?;
    let expected = &(&o - &Rational::one()) + &gen.weight();
    if !(&expected - s).is_integer() {
        return Err(Error::Invalid(format!(
            "twist exponent {s} does not match the mode support of {} (expected {} mod 1)",
            gen.name,
            expected.fract()
        )));
    }
    Ok(Arc::new(IterateFamily {
        sector: sector.clone(),
        gen: gen.clone(),
        s: s.clone(),
        p,
        target,
        memo: RwLock::new(HashMap::new()),
    }))
}

/// A single mode u_q as an operator.
pub struct FamilyMode {
    family: Arc<dyn ModeFamily>,
    q: Rational,
}

impl FamilyMode {
    pub fn new(family: Arc<dyn ModeFamily>, q: Rational) -> Result<Self, Error> {
        if !on_coset(&q, &family.coset()) {
            return Err(Error::UnsupportedMode { symbol: format!("mode {q}"), support: format!("Z+{}", family.coset()) });
        }
        Ok(FamilyMode { family, q })
    }

    fn new_unchecked(family: &dyn ModeFamily, q: Rational) -> BorrowedMode<'_> {
        BorrowedMode { family, q }
    }
}

impl ModeOp for FamilyMode {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error> {
        self.family.apply_mode(&self.q, m)
    }

    fn is_odd(&self) -> bool {
        self.family.is_odd()
    }
}

struct BorrowedMode<'a> {
    family: &'a dyn ModeFamily,
    q: Rational,
}

impl ModeOp for BorrowedMode<'_> {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error> {
        self.family.apply_mode(&self.q, m)
    }

    fn is_odd(&self) -> bool {
        self.family.is_odd()
    }
}
