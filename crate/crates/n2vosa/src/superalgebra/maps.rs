use std::fmt;

use super::{AlgElement, Family, GenSymbol};
use crate::scalar::{CycScalar, Rational};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ToHomogeneous,
    ToNonhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirasoroAuto {
    /// σ_ξ for a root of unity ξ.
    SigmaXi(CycScalar),
    /// κ
    Mirror,
    /// σ_{−1}
    Parity,
}

/// Linear maps between presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraMap {
    Identity,
    SpectralFlow(Rational),
    Auto(VirasoroAuto),
    BasisChange(Direction),
}

impl fmt::Display for AlgebraMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraMap::Identity => write!(f, "identity"),
            AlgebraMap::SpectralFlow(t) => write!(f, "D({t})"),
            AlgebraMap::Auto(VirasoroAuto::SigmaXi(x)) => write!(f, "sigma_xi(xi = {x})"),
            AlgebraMap::Auto(VirasoroAuto::Mirror) => write!(f, "kappa"),
            AlgebraMap::Auto(VirasoroAuto::Parity) => write!(f, "parity"),
            AlgebraMap::BasisChange(Direction::ToHomogeneous) => write!(f, "to homogeneous"),
            AlgebraMap::BasisChange(Direction::ToNonhomogeneous) => write!(f, "to nonhomogeneous"),
        }
    }
}

fn linear(a: &AlgElement, f: impl Fn(&GenSymbol) -> Result<AlgElement, Error>) -> Result<AlgElement, Error> {
    let mut out = AlgElement::central(a.central_coeff().clone());
    for (s, c) in a.terms() {
        out.add_scaled(&f(s)?, c);
    }
    Ok(out)
}

fn nonhomogeneous_input(s: &GenSymbol, what: &str) -> Error {
    Error::Invalid(format!("{what} needs the homogeneous basis, got {s}"))
}

/// D(t): L_n ↦ L_n + tJ_n + (t²/6)δ_{n,0}Z, J_n ↦ J_n + (t/3)δ_{n,0}Z,
/// G^±_r ↦ G^±_{r±t}.
pub fn spectral_flow(t: &Rational, a: &AlgElement) -> Result<AlgElement, Error> {
    linear(a, |s| {
        let n = &s.index;
        let mut out = AlgElement::zero();
        match s.family {
            Family::L => {
                out.add_symbol(s.clone(), &CycScalar::one());
                out.add_symbol(GenSymbol::new(Family::J, n.clone()), &CycScalar::from(t.clone()));
                if n.is_zero() {
                    out.add_central(&CycScalar::from(&(t * t) * &Rational::new(1, 6)));
                }
            }
            Family::J => {
                out.add_symbol(s.clone(), &CycScalar::one());
                if n.is_zero() {
                    out.add_central(&CycScalar::from(t * &Rational::new(1, 3)));
                }
            }
            Family::Gp => out.add_symbol(GenSymbol::new(Family::Gp, n + t), &CycScalar::one()),
            Family::Gm => out.add_symbol(GenSymbol::new(Family::Gm, n - t), &CycScalar::one()),
            _ => return Err(nonhomogeneous_input(s, "spectral flow")),
        }
        Ok(out)
    })
}

/// G1 = (G⁺ + G⁻)/√2, G2 = i(G⁺ − G⁻)/√2 and inversely.
pub fn basis_change(direction: Direction, a: &AlgElement) -> Result<AlgElement, Error> {
    let s2 = CycScalar::sqrt2().inv()?;
    let i = CycScalar::i();
    linear(a, |s| {
        let r = s.index.clone();
        let mut out = AlgElement::zero();
        match (direction, s.family) {
            (Direction::ToHomogeneous, Family::G1) => {
                out.add_symbol(GenSymbol::new(Family::Gp, r.clone()), &s2);
                out.add_symbol(GenSymbol::new(Family::Gm, r), &s2);
            }
            (Direction::ToHomogeneous, Family::G2) => {
                out.add_symbol(GenSymbol::new(Family::Gp, r.clone()), &(&i * &s2));
                out.add_symbol(GenSymbol::new(Family::Gm, r), &-&(&i * &s2));
            }
            (Direction::ToNonhomogeneous, Family::Gp) => {
                out.add_symbol(GenSymbol::new(Family::G1, r.clone()), &s2);
                out.add_symbol(GenSymbol::new(Family::G2, r), &-&(&i * &s2));
            }
            (Direction::ToNonhomogeneous, Family::Gm) => {
                out.add_symbol(GenSymbol::new(Family::G1, r.clone()), &s2);
                out.add_symbol(GenSymbol::new(Family::G2, r), &(&i * &s2));
            }
            _ => out.add_symbol(s.clone(), &CycScalar::one()),
        }
        Ok(out)
    })
}

fn check_root_of_unity(xi: &CycScalar) -> Result<(), Error> {
    let limit = 2 * xi.conductor().max(1);
    if xi.multiplicative_order(limit).is_some() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{xi} is not a root of unity")))
    }
}

fn homogeneous_auto(kind: &VirasoroAuto, s: &GenSymbol) -> Result<AlgElement, Error> {
    let mut out = AlgElement::zero();
    let r = s.index.clone();
    match (kind, s.family) {
        (_, Family::L) => out.add_symbol(s.clone(), &CycScalar::one()),
        (VirasoroAuto::Mirror, Family::J) => out.add_symbol(s.clone(), &CycScalar::from_int(-1)),
        (_, Family::J) => out.add_symbol(s.clone(), &CycScalar::one()),
        (VirasoroAuto::SigmaXi(xi), Family::Gp) => out.add_symbol(s.clone(), xi),
        (VirasoroAuto::SigmaXi(xi), Family::Gm) => out.add_symbol(s.clone(), &xi.inv()?),
        (VirasoroAuto::Mirror, Family::Gp) => out.add_symbol(GenSymbol::new(Family::Gm, r), &CycScalar::one()),
        (VirasoroAuto::Mirror, Family::Gm) => out.add_symbol(GenSymbol::new(Family::Gp, r), &CycScalar::one()),
        (VirasoroAuto::Parity, _) => out.add_symbol(s.clone(), &CycScalar::from_int(-1)),
        (_, Family::GN1) => return Err(Error::Invalid(format!("{s} only admits the parity map"))),
        (_, Family::G1 | Family::G2) => unreachable!(),
    }
    Ok(out)
}

/// σ_ξ, κ or parity. On G1/G2 the map is transported through the basis
/// change, so the nonhomogeneous forms are derived rather than tabulated.
pub fn virasoro_auto(kind: &VirasoroAuto, a: &AlgElement) -> Result<AlgElement, Error> {
    if let VirasoroAuto::SigmaXi(xi) = kind {
        check_root_of_unity(xi)?;
    }
    linear(a, |s| match s.family {
        Family::G1 | Family::G2 => {
            if *kind == VirasoroAuto::Parity {
                return homogeneous_auto(kind, s);
            }
            let h = basis_change(Direction::ToHomogeneous, &AlgElement::from_symbol(s.clone()))?;
            let mapped = linear(&h, |t| homogeneous_auto(kind, t))?;
            basis_change(Direction::ToNonhomogeneous, &mapped)
        }
        _ => homogeneous_auto(kind, s),
    })
}

pub fn apply_map(map: &AlgebraMap, a: &AlgElement) -> Result<AlgElement, Error> {
    match map {
        AlgebraMap::Identity => Ok(a.clone()),
        AlgebraMap::SpectralFlow(t) => spectral_flow(t, a),
        AlgebraMap::Auto(k) => virasoro_auto(k, a),
        AlgebraMap::BasisChange(d) => basis_change(*d, a),
    }
}
