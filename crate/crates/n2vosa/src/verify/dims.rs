use std::collections::BTreeMap;

use serde::Serialize;

use crate::fock::{weight_of, BaseMode, Basis, Charge, Monomial, Sector, State, Twist};
use crate::operators::{OperatorFamily, SparseMatrix};
use crate::qseries::{BiSeries, PuiseuxSeries};
use crate::scalar::{CycScalar, Rational};
use crate::superalgebra::{Family, GenSymbol};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Dim,
    Sdim,
    /// p-exponents with |a| ≤ p_bound are reported.
    Pq { p_bound: i64 },
}

#[derive(Clone, Debug)]
pub enum GradedDimension {
    Q(PuiseuxSeries),
    /// Every J(0)-eigenvalue is p_shift plus the integer p-exponent stored in
    /// the series.
    Pq { series: BiSeries, p_shift: Rational },
}

impl GradedDimension {
    pub fn q(self) -> Option<PuiseuxSeries> {
        match self {
            GradedDimension::Q(s) => Some(s),
            _ => None,
        }
    }
}

/// Smallest grid point above the cutoff, the grid being spanned by all
/// creation grades.
pub(crate) fn next_grid_point(sector: &Sector, cutoff: &Rational) -> Rational {
    let grades: Vec<Rational> = sector.creation_keys(cutoff).iter().map(|k| k.grade()).collect();
    let den = Rational::lcm_denominator(grades.iter().chain(std::iter::once(cutoff))).max(1);
    let scaled = (cutoff * &Rational::from_int(den)).floor();
    &(&scaled + &Rational::one()) / &Rational::from_int(den)
}

fn eigenvalue(op: &dyn crate::operators::ModeOp, m: &Monomial, what: &str) -> Result<Rational, Error> {
    let image = op.apply_mono(m)?;
    let c = image.coefficient(m);
    if image.len() > usize::from(!c.is_zero()) {
        return Err(Error::Internal(format!("{what} is not diagonal on {m}: image {image}")));
    }
    c.to_rational().ok_or_else(|| Error::Internal(format!("{what} eigenvalue {c} on {m} is not rational")))
}

/// tr q^{L(0) − c/24} (optionally with the parity sign or p^{J(0)}) over the
/// enumerated basis, exact below the returned truncation.
pub fn graded_dimension(family: &OperatorFamily, cutoff: &Rational, variant: Variant) -> Result<GradedDimension, Error> {
    let sector = family.sector();
    let basis = Basis::new(sector, cutoff);
    let l0 = family.op(&GenSymbol::new(Family::L, Rational::zero()))?;
    let shift = &Rational::from_int(-1) * &(family.central_charge_claim() / &Rational::from_int(24));
    let vac = eigenvalue(l0.as_ref(), &Monomial::vacuum(), "L(0)")?;
    let trunc = &(&next_grid_point(sector, cutoff) + &vac) + &shift;
    match variant {
        Variant::Dim | Variant::Sdim => {
            let mut out = PuiseuxSeries::zero(Some(trunc));
            for m in basis.monomials() {
                let e = &eigenvalue(l0.as_ref(), m, "L(0)")? + &shift;
                let sign = if variant == Variant::Sdim && sector.parity(m) { -1 } else { 1 };
                out.add_term(&e, CycScalar::from_int(sign));
            }
            Ok(GradedDimension::Q(out))
        }
        Variant::Pq { p_bound } => {
            let j0 = family.op(&GenSymbol::new(Family::J, Rational::zero())).map_err(|e| {
                Error::Invalid(format!("p,q-characters need an integrally moded J: {e}"))
            })?;
            let charge = |m: &Monomial| {
                eigenvalue(j0.as_ref(), m, "J(0)").map_err(|e| match e {
                    Error::Internal(msg) => Error::Invalid(format!("{msg}; p,q-characters need a charged basis")),
                    other => other,
                })
            };
            let p_shift = charge(&Monomial::vacuum())?;
            let mut out = BiSeries::zero(Some(trunc), p_bound);
            for m in basis.monomials() {
                let e = &eigenvalue(l0.as_ref(), m, "L(0)")? + &shift;
                let a = &charge(m)? - &p_shift;
                let a = a
                    .to_i64()
                    .filter(|_| a.is_integer())
                    .ok_or_else(|| Error::Internal(format!("J(0) charge of {m} is off the vacuum lattice")))?;
                out.add_term(a, &e, CycScalar::one());
            }
            Ok(GradedDimension::Pq { series: out, p_shift })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub computed: String,
    pub closed_form: String,
    pub truncation: Option<Rational>,
    pub first_difference: Option<String>,
    pub matched: bool,
}

fn min_trunc(a: Option<&Rational>, b: Option<&Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (x, y) => x.or(y).cloned(),
    }
}

/// Coefficientwise comparison below the common truncation.
pub fn compare_series(computed: &PuiseuxSeries, closed_form: &PuiseuxSeries) -> DimensionReport {
    let diff = computed.first_difference(closed_form);
    DimensionReport {
        computed: computed.to_string(),
        closed_form: closed_form.to_string(),
        truncation: min_trunc(computed.trunc(), closed_form.trunc()),
        first_difference: diff.as_ref().map(|(e, a, b)| format!("q^{e}: {a} vs {b}")),
        matched: diff.is_none(),
    }
}

pub fn compare_biseries(computed: &BiSeries, closed_form: &BiSeries) -> DimensionReport {
    let diff = computed.first_difference(closed_form);
    DimensionReport {
        computed: computed.to_string(),
        closed_form: closed_form.to_string(),
        truncation: min_trunc(computed.trunc(), closed_form.trunc()),
        first_difference: diff.as_ref().map(|((a, e), x, y)| format!("p^{a} q^{e}: {x} vs {y}")),
        matched: diff.is_none(),
    }
}

/// The two summands M^± = (1 ± ε(0))W⁰ ⊕ (1 ∓ ε(0))W¹ of the σ-twisted
/// fermion sector for odd d, where W is spanned by the monomials without
/// ε(0).
#[derive(Clone, Debug)]
pub struct RamondSplit {
    pub plus: Vec<State>,
    pub minus: Vec<State>,
    pub plus_dim: PuiseuxSeries,
    pub minus_dim: PuiseuxSeries,
}

pub fn ramond_split(family: &OperatorFamily, cutoff: &Rational) -> Result<RamondSplit, Error> {
    let sector = family.sector();
    let spec = sector.spec();
    if spec.d.is_multiple_of(2) {
        return Err(Error::Invalid(format!("the sector splits only for odd d, got d = {}", spec.d)));
    }
    let slot = spec
        .slots
        .iter()
        .position(|s| s.twist == Twist::Sigma)
        .ok_or_else(|| Error::Invalid("no σ-twisted fermion slot".into()))?;
    if spec.slots.iter().filter(|s| s.twist == Twist::Sigma).count() != 1 {
        return Err(Error::Invalid("the split needs exactly one σ-twisted fermion slot".into()));
    }
    let eps = BaseMode { slot: slot as u8, charge: Charge::Epsilon, flavor: spec.d as u8 };
    let basis = Basis::new(sector, cutoff);
    let l0 = family.op(&GenSymbol::new(Family::L, Rational::zero()))?;
    let shift = &Rational::from_int(-1) * &(family.central_charge_claim() / &Rational::from_int(24));
    let vac = eigenvalue(l0.as_ref(), &Monomial::vacuum(), "L(0)")?;
    let trunc = &(&next_grid_point(sector, cutoff) + &vac) + &shift;
    let mut out = RamondSplit {
        plus: Vec::new(),
        minus: Vec::new(),
        plus_dim: PuiseuxSeries::zero(Some(trunc.clone())),
        minus_dim: PuiseuxSeries::zero(Some(trunc)),
    };
    for m in basis.monomials() {
        if m.factors().iter().any(|(k, _)| k.slot as usize == slot && k.charge == Charge::Epsilon && k.grade().is_zero()) {
            continue;
        }
        let w = State::monomial(m.clone());
        let e = sector.apply_mode(&eps, &Rational::zero(), &w)?;
        let odd = sector.parity(m);
        let (p, q) = {
            let mut a = w.clone();
            a.add(&e);
            (a, w.minus(&e))
        };
        let (plus, minus) = if odd { (q, p) } else { (p, q) };
        let x = &(&weight_of(m) + &vac) + &shift;
        out.plus.push(plus);
        out.minus.push(minus);
        out.plus_dim.add_term(&x, CycScalar::one());
        out.minus_dim.add_term(&x, CycScalar::one());
    }
    Ok(out)
}

/// Graded dimension of one eigenspace of a finite-order automorphism.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    /// The eigenvalue is ζ_order^exponent.
    pub order: u32,
    pub exponent: u32,
    pub eigenvalue: CycScalar,
    /// Σ dim(V_λ ∩ V_w) q^w over intrinsic weights w.
    pub series: PuiseuxSeries,
}

/// Eigenspace graded dimensions from traces of powers on each weight
/// stratum: dim = (1/k) Σ_i λ^{−i} tr(A^i).
pub fn fixed_subspace_dims(auto: &SparseMatrix, basis: &Basis, sector: &Sector) -> Result<Vec<Eigenspace>, Error> {
    let n = basis.len();
    let id = SparseMatrix::identity(n);
    let mut powers = vec![id.clone()];
    let order = loop {
        let next = powers.last().unwrap().mul(auto);
        if next.sub(&id).is_zero() {
            break powers.len() as u32;
        }
        if powers.len() >= 120 {
            return Err(Error::Invalid("automorphism has no finite order below 120 on the basis".into()));
        }
        powers.push(next);
    };
    let mut strata: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for (i, m) in basis.monomials().iter().enumerate() {
        strata.entry(weight_of(m)).or_default().push(i);
    }
    let traces: Vec<(Rational, Vec<CycScalar>)> =
        strata.iter().map(|(w, idx)| (w.clone(), powers.iter().map(|p| p.restrict(idx).trace()).collect())).collect();
    let trunc = next_grid_point(sector, basis.cutoff());
    let k = Rational::from_int(order as i64);
    let mut out = Vec::new();
    for e in 0..order {
        let lambda = CycScalar::zeta(order, e as i64)?;
        let inv = lambda.inv()?;
        let mut series = PuiseuxSeries::zero(Some(trunc.clone()));
        for (w, tr) in &traces {
            let mut acc = CycScalar::zero();
            let mut pw = CycScalar::one();
            for t in tr {
                acc += &(&pw * t);
                pw = &pw * &inv;
            }
            let dim = acc
                .scale(&(&Rational::one() / &k))
                .to_rational()
                .filter(|d| d.is_integer() && *d >= Rational::zero())
                .ok_or_else(|| Error::Internal(format!("eigenspace dimension at weight {w} is not a natural number")))?;
            series.add_term(w, CycScalar::from(dim));
        }
        out.push(Eigenspace { order, exponent: e, eigenvalue: lambda, series });
    }
    Ok(out)
}
