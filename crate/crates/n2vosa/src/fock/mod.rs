//! Free-field Fock spaces: untwisted bosons and fermions, the σ-twisted
//! fermion with its Clifford zero modes, the κ-twisted boson and the
//! σ_ξ-twisted charged fermion.
//!
//! States are finite combinations of canonically ordered monomials in
//! creation operators. Weights here are intrinsic (the sum of the grades);
//! vacuum anomalies belong to the operators.

mod mode;
mod sector;
mod spec;

pub use mode::{weight_of, Charge, Grade, ModeKey, Monomial, State};
pub use sector::{BaseMode, Basis, Component, Field, Sector};
pub use spec::{FlavorBasis, SectorSpec, SlotSpec, Species, Twist};

use crate::scalar::Rational;
use crate::Error;

pub fn enumerate_basis(spec: &SectorSpec, max_weight: &Rational) -> Result<Vec<Monomial>, Error> {
    Ok(Sector::new(spec.clone())?.enumerate_basis(max_weight))
}

pub fn apply_mode(sector: &Sector, state: &State, mode: &BaseMode, index: &Rational) -> Result<State, Error> {
    sector.apply_mode(mode, index, state)
}
