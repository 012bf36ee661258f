//! Fock-space sectors: graded bases and free-field modes, untwisted and
//! twisted.

use n2vosa::fock::{weight_of, Basis, Component, SectorSpec, Species, State};
use n2vosa::fock::Sector;
use n2vosa::scalar::{q, Rational};

fn main() -> Result<(), n2vosa::Error> {
    let fer = Sector::new(SectorSpec::fer(1))?;
    let basis = Basis::new(&std::sync::Arc::new(fer.clone()), &Rational::from_int(3));
    println!("{fer}: {} states up to weight 3", basis.len());
    for m in basis.monomials() {
        println!("  weight {:>3}  {m}", weight_of(m));
    }

    // Two fermion modes anticommute.
    let psi = fer.field(Species::Fermion, Component::Ortho(1), 1)?;
    let v = State::vacuum();
    let ab = fer.apply_field(&psi, &q(-1, 2), &fer.apply_field(&psi, &q(-3, 2), &v)?)?;
    let ba = fer.apply_field(&psi, &q(-3, 2), &fer.apply_field(&psi, &q(-1, 2), &v)?)?;
    println!("ψ(-1/2)ψ(-3/2)1 = {ab}");
    println!("ψ(-3/2)ψ(-1/2)1 = {ba}");

    // In the σ-twisted sector the fermion is integrally moded and has a zero mode.
    let twisted = Sector::new(SectorSpec::sigma_fermion(1))?;
    let eps = twisted.field(Species::Fermion, Component::Ortho(1), 1)?;
    println!("{twisted}: fermion support Z+{}", twisted.field_support(&eps)?);
    println!("ψ(0)1 = {}", twisted.apply_field(&eps, &Rational::zero(), &v)?);
    match twisted.apply_field(&eps, &q(1, 2), &v) {
        Ok(s) => println!("unexpected: {s}"),
        Err(e) => println!("ψ(1/2): {e}"),
    }
    Ok(())
}
