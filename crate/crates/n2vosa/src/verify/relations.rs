use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::fock::{Basis, Component, Field, Monomial, Sector, State};
use crate::operators::{FieldOp, ModeOp, Op, OperatorFamily};
use crate::scalar::{CycScalar, Rational};
use crate::superalgebra::{Family, GenSymbol, Presentation};
use crate::Error;

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub pair: [String; 2],
    pub state: String,
    pub residual: String,
}

/// Outcome of extracting the central charge from every central term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralCharge {
    Consistent(Rational),
    Inconsistent,
    NotMeasured,
}

impl Serialize for CentralCharge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CentralCharge::Consistent(c) => s.serialize_str(&c.to_string()),
            CentralCharge::Inconsistent => s.serialize_str("inconsistent"),
            CentralCharge::NotMeasured => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub suite: String,
    pub sector: String,
    pub index_bound: Rational,
    pub cutoff: Rational,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub central_measurements: usize,
    pub central_charge: CentralCharge,
    pub central_charge_claim: Rational,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    /// Every bracket holds and the measured central charge is the claimed one.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && match &self.central_charge {
                CentralCharge::Consistent(c) => c == &self.central_charge_claim,
                CentralCharge::NotMeasured => true,
                CentralCharge::Inconsistent => false,
            }
    }
}

fn supercommutator(x: &Op, y: &Op, w: &State) -> Result<State, Error> {
    let xy = x.apply(&y.apply(w)?)?;
    let yx = y.apply(&x.apply(w)?)?;
    if x.is_odd() && y.is_odd() {
        let mut s = xy;
        s.add(&yx);
        Ok(s)
    } else {
        Ok(xy.minus(&yx))
    }
}

struct PairOutcome {
    failures: Vec<RelationFailure>,
    central: Vec<Rational>,
}

fn check_pair(
    family: &OperatorFamily,
    pres: &Presentation,
    x: &GenSymbol,
    y: &GenSymbol,
    basis: &Basis,
) -> Result<PairOutcome, Error> {
    let bracket = pres.bracket_gen(x, y)?;
    let ox = family.op(x)?;
    let oy = family.op(y)?;
    let image: Vec<(CycScalar, Op)> =
        bracket.terms().map(|(s, c)| Ok((c.clone(), family.op(s)?))).collect::<Result<_, Error>>()?;
    let z = bracket.central_coeff();
    let mut out = PairOutcome { failures: Vec::new(), central: Vec::new() };
    let mut lambda: Option<CycScalar> = None;
    for m in basis.monomials() {
        let w = State::monomial(m.clone());
        let mut res = supercommutator(&ox, &oy, &w)?;
        for (c, op) in &image {
            res.add_scaled(&op.apply(&w)?, &-c);
        }
        let fail = |res: &State| RelationFailure {
            pair: [x.to_string(), y.to_string()],
            state: m.to_string(),
            residual: res.to_string(),
        };
        if z.is_zero() {
            if !res.is_zero() {
                out.failures.push(fail(&res));
                break;
            }
            continue;
        }
        let l = res.coefficient(m);
        let mut rest = res.clone();
        rest.add_term(m.clone(), &-&l);
        if !rest.is_zero() {
            out.failures.push(fail(&res));
            break;
        }
        match &lambda {
            None => lambda = Some(l),
            Some(prev) if *prev != l => {
                out.failures.push(fail(&res));
                break;
            }
            _ => {}
        }
    }
    if let Some(l) = lambda {
        match (&l * &z.inv()?).to_rational() {
            Some(c) => out.central.push(c),
            None => out.failures.push(RelationFailure {
                pair: [x.to_string(), y.to_string()],
                state: "all".into(),
                residual: format!("central term {l} is not a rational multiple of {z}"),
            }),
        }
    }
    Ok(out)
}

/// Checks every bracket between generators with |index| ≤ bound as an
/// operator identity on all basis states of weight ≤ cutoff.
pub fn check_relations(
    family: &OperatorFamily,
    pres: &Presentation,
    index_bound: &Rational,
    cutoff: &Rational,
) -> Result<RelationReport, Error> {
    let basis = Basis::new(family.sector(), cutoff);
    let gens = pres.generators(index_bound);
    for g in &gens {
        family.op(g)?;
    }
    let pairs: Vec<(usize, usize)> = (0..gens.len()).flat_map(|i| (i..gens.len()).map(move |j| (i, j))).collect();
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(i, j)| check_pair(family, pres, &gens[i], &gens[j], &basis))
        .collect::<Result<_, Error>>()?;
    let mut failures = Vec::new();
    let mut values: Vec<Rational> = Vec::new();
    for o in outcomes {
        failures.extend(o.failures);
        values.extend(o.central);
    }
    let central_charge = match values.first() {
        None => CentralCharge::NotMeasured,
        Some(c) if values.iter().all(|v| v == c) => CentralCharge::Consistent(c.clone()),
        Some(_) => CentralCharge::Inconsistent,
    };
    Ok(RelationReport {
        suite: pres.to_string(),
        sector: family.sector().to_string(),
        index_bound: index_bound.clone(),
        cutoff: cutoff.clone(),
        basis_size: basis.len(),
        pairs_checked: pairs.len(),
        central_measurements: values.len(),
        central_charge,
        central_charge_claim: family.central_charge_claim().clone(),
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivativeReport {
    pub sector: String,
    pub index_bound: Rational,
    pub cutoff: Rational,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl DerivativeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The free generating fields of a sector, one per slot and flavor (two for
/// charged slots).
pub fn free_fields(sector: &Sector) -> Result<Vec<Field>, Error> {
    let mut out = Vec::new();
    for slot in &sector.spec().slots {
        for j in 1..=sector.d() as u8 {
            if slot.copy == 0 {
                out.push(sector.field(slot.species, Component::Charged(true), j)?);
                out.push(sector.field(slot.species, Component::Charged(false), j)?);
            } else {
                out.push(sector.field(slot.species, Component::Ortho(slot.copy), j)?);
            }
        }
    }
    Ok(out)
}

fn family_weight(f: Family) -> Rational {
    match f {
        Family::L => Rational::from_int(2),
        Family::J => Rational::one(),
        _ => Rational::new(3, 2),
    }
}

fn compare_on(lhs: &dyn ModeOp, x: &dyn ModeOp, rhs: &dyn ModeOp, coef: &Rational, basis: &[Monomial]) -> Result<Option<String>, Error> {
    for m in basis {
        let w = State::monomial(m.clone());
        let mut res = lhs.apply(&x.apply(&w)?)?.minus(&x.apply(&lhs.apply(&w)?)?);
        res.add_scaled(&rhs.apply(&w)?, &CycScalar::from(-coef));
        if !res.is_zero() {
            return Ok(Some(format!("on {m}: residual {res}")));
        }
    }
    Ok(None)
}

/// Checks [L(−1), u(n+1)] = (−n − Δ) u(n) for every free field and every
/// generator mode with |n| ≤ bound, on the states of weight ≤ cutoff.
pub fn check_derivative(
    family: &OperatorFamily,
    index_bound: &Rational,
    cutoff: &Rational,
) -> Result<DerivativeReport, Error> {
    let sector = family.sector();
    let basis = Basis::new(sector, cutoff);
    let l = family.op(&GenSymbol::new(Family::L, Rational::from_int(-1)))?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for f in free_fields(sector)? {
        let o = sector.field_support(&f)?;
        let mut n = &o + &(&(-index_bound) - &o).ceil();
        while &n <= index_bound {
            let hi = FieldOp::new(sector.clone(), f.clone(), &n + &Rational::one())?;
            let lo = FieldOp::new(sector.clone(), f.clone(), n.clone())?;
            let coef = &(-&n) - &f.weight();
            checks += 1;
            if let Some(why) = compare_on(l.as_ref(), &hi, &lo, &coef, basis.monomials())? {
                failures.push(format!("[L(-1), {}({})] {why}", f.name, &n + &Rational::one()));
            }
            n = &n + &Rational::one();
        }
    }
    let pres = family.presentation();
    for g in pres.generators(index_bound) {
        let up = GenSymbol::new(g.family, &g.index + &Rational::one());
        if up.index.abs() > *index_bound {
            continue;
        }
        let coef = &(-&g.index) - &family_weight(g.family);
        checks += 1;
        let hi = family.op(&up)?;
        let lo = family.op(&g)?;
        if let Some(why) = compare_on(l.as_ref(), hi.as_ref(), lo.as_ref(), &coef, basis.monomials())? {
            failures.push(format!("[L(-1), {up}] {why}"));
        }
    }
    Ok(DerivativeReport {
        sector: sector.to_string(),
        index_bound: index_bound.clone(),
        cutoff: cutoff.clone(),
        checks,
        failures,
    })
}
