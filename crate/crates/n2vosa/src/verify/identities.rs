use serde::Serialize;

use crate::fock::{Component, Field, Sector, Species, State};
use crate::operators::OperatorFamily;
use crate::scalar::{CycScalar, Rational};
use crate::superalgebra::{Family, GenSymbol};
use crate::Error;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn apply_fields(sector: &Sector, fields: &[(&Field, Rational)]) -> Result<State, Error> {
    let mut s = State::vacuum();
    for (f, n) in fields.iter().rev() {
        s = sector.apply_field(f, n, &s)?;
    }
    Ok(s)
}

fn copies(sector: &Sector, species: Species) -> Vec<u8> {
    let mut out: Vec<u8> = sector.spec().slots.iter().filter(|s| s.species == species).map(|s| s.copy).collect();
    out.sort();
    out.dedup();
    out
}

/// ω written directly in free-field creation operators.
pub fn conformal_vector(sector: &Sector) -> Result<State, Error> {
    let mut out = State::zero();
    let half = CycScalar::from(q(1, 2));
    for j in 1..=sector.d() as u8 {
        for c in copies(sector, Species::Boson) {
            let a = sector.field(Species::Boson, Component::Ortho(c), j)?;
            out.add_scaled(&apply_fields(sector, &[(&a, q(-1, 1)), (&a, q(-1, 1))])?, &half);
        }
        for c in copies(sector, Species::Fermion) {
            let a = sector.field(Species::Fermion, Component::Ortho(c), j)?;
            out.add_scaled(&apply_fields(sector, &[(&a, q(-3, 2)), (&a, q(-1, 2))])?, &half);
        }
    }
    Ok(out)
}

/// τ = Σ α(−1)α(−1/2)1 over the boson-fermion copy pairs.
pub fn superconformal_vector(sector: &Sector) -> Result<State, Error> {
    let mut out = State::zero();
    for j in 1..=sector.d() as u8 {
        for c in copies(sector, Species::Boson) {
            let a = sector.field(Species::Boson, Component::Ortho(c), j)?;
            let b = sector.field(Species::Fermion, Component::Ortho(c), j)?;
            out.add(&apply_fields(sector, &[(&a, q(-1, 1)), (&b, q(-1, 2))])?);
        }
    }
    Ok(out)
}

/// μ = i Σ α_(1)(−1/2)α_(2)(−1/2)1 on the fermions.
pub fn current_vector(sector: &Sector) -> Result<State, Error> {
    let mut out = State::zero();
    for j in 1..=sector.d() as u8 {
        let a = sector.field(Species::Fermion, Component::Ortho(1), j)?;
        let b = sector.field(Species::Fermion, Component::Ortho(2), j)?;
        out.add_scaled(&apply_fields(sector, &[(&a, q(-1, 2)), (&b, q(-1, 2))])?, &CycScalar::i());
    }
    Ok(out)
}

fn record(out: &mut Vec<IdentityCheck>, name: &str, lhs: &State, rhs: &State) {
    let diff = lhs.minus(rhs);
    out.push(IdentityCheck {
        name: name.into(),
        passed: diff.is_zero(),
        detail: if diff.is_zero() { format!("{lhs}") } else { format!("lhs {lhs}, rhs {rhs}") },
    });
}

/// Identities among the vacuum, the distinguished vectors and the generator
/// modes of an untwisted family.
pub fn consequence_identities(family: &OperatorFamily) -> Result<Vec<IdentityCheck>, Error> {
    let sector = family.sector();
    let fams: Vec<Family> = family.kind().presentations().iter().flat_map(|p| p.families()).collect();
    let op = |f: Family, n: Rational| family.op(&GenSymbol::new(f, n));
    let vac = State::vacuum();
    let mut out = Vec::new();
    for n in -1..=3 {
        let img = op(Family::L, Rational::from_int(n))?.apply(&vac)?;
        record(&mut out, &format!("L({n})1 = 0"), &img, &State::zero());
    }
    let omega = conformal_vector(sector)?;
    record(&mut out, "L(-2)1 = ω", &op(Family::L, q(-2, 1))?.apply(&vac)?, &omega);
    let g = [Family::GN1, Family::G1].into_iter().find(|f| fams.contains(f));
    if let Some(g) = g {
        let tau = superconformal_vector(sector)?;
        let c = CycScalar::from(family.central_charge_claim().clone());
        record(&mut out, "τ = G(-3/2)1", &op(g, q(-3, 2))?.apply(&vac)?, &tau);
        let g_half = op(g, q(-1, 2))?.apply(&tau)?;
        record(&mut out, "ω = (1/2)G(-1/2)τ", &g_half.scaled(&CycScalar::from(q(1, 2))), &omega);
        // τ_n = G(n − 1/2)
        record(&mut out, "τ₀τ = 2ω", &g_half, &omega.scaled(&CycScalar::from_int(2)));
        let t2 = op(g, q(3, 2))?.apply(&tau)?;
        record(&mut out, "τ₂τ = (2/3)c·1", &t2, &vac.scaled(&c.scale(&q(2, 3))));
    }
    if fams.contains(&Family::J) && copies(sector, Species::Fermion).len() == 2 {
        record(&mut out, "μ = J(-1)1", &op(Family::J, q(-1, 1))?.apply(&vac)?, &current_vector(sector)?);
    }
    Ok(out)
}
