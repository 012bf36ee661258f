use std::sync::Arc;

use super::SparseMatrix;
use crate::fock::{BaseMode, Basis, Charge, ModeKey, Sector, SectorSpec, State, Twist};
use crate::scalar::CycScalar;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismKind {
    Parity,
    SigmaXi(CycScalar),
    Kappa,
    KappaTilde,
    /// α_(1) ↦ cos·α_(1) + sin·α_(2), α_(2) ↦ −sin·α_(1) + cos·α_(2) on
    /// bosons and fermions alike.
    Rotation { cos: CycScalar, sin: CycScalar },
}

fn is_untwisted(spec: &SectorSpec) -> bool {
    spec.slots.iter().all(|s| s.twist == Twist::Untwisted)
}

fn is_orthonormal_pair(spec: &SectorSpec) -> bool {
    let want = SectorSpec::n2_free(spec.d);
    spec.slots == want.slots
}

fn is_charged_pair(spec: &SectorSpec) -> bool {
    let want = SectorSpec::n2_free_charged(spec.d);
    spec.slots == want.slots
}

/// Image of one creation operator as a combination of base modes.
fn key_image(kind: &AutomorphismKind, sector: &Sector, k: &ModeKey) -> Result<Vec<(BaseMode, CycScalar)>, Error> {
    let base = BaseMode { slot: k.slot, charge: k.charge, flavor: k.flavor };
    let fermion = sector.is_fermionic_slot(k.slot);
    let one = CycScalar::one();
    Ok(match kind {
        AutomorphismKind::Parity => {
            vec![(base, if fermion { CycScalar::from_int(-1) } else { one })]
        }
        AutomorphismKind::Kappa => {
            let copy = sector.slot(k.slot as usize).copy;
            match (copy, k.charge) {
                (2, _) => vec![(base, CycScalar::from_int(-1))],
                (0, Charge::Plus) => vec![(BaseMode { charge: Charge::Minus, ..base }, one)],
                (0, Charge::Minus) => vec![(BaseMode { charge: Charge::Plus, ..base }, one)],
                _ => vec![(base, one)],
            }
        }
        AutomorphismKind::KappaTilde => {
            if !is_orthonormal_pair(sector.spec()) {
                return Err(Error::Invalid("the swap of tensor factors needs the orthonormal V⊗V layout".into()));
            }
            vec![(BaseMode { slot: (k.slot + 2) % 4, ..base }, one)]
        }
        AutomorphismKind::Rotation { cos, sin } => {
            let copy = sector.slot(k.slot as usize).copy;
            if copy == 1 {
                vec![(base, cos.clone()), (BaseMode { slot: k.slot + 2, ..base }, sin.clone())]
            } else {
                vec![(BaseMode { slot: k.slot - 2, ..base }, -sin), (base, cos.clone())]
            }
        }
        AutomorphismKind::SigmaXi(xi) => {
            if !fermion {
                return Ok(vec![(base, one)]);
            }
            let inv = xi.inv()?;
            match k.charge {
                Charge::Plus => vec![(base, xi.clone())],
                Charge::Minus => vec![(base, inv)],
                _ => {
                    // α_(1) ↦ c α_(1) − s α_(2), α_(2) ↦ s α_(1) + c α_(2)
                    // with c = (ξ + ξ⁻¹)/2, s = i(ξ − ξ⁻¹)/2
                    let half = CycScalar::from(crate::scalar::Rational::new(1, 2));
                    let c = &(xi + &inv) * &half;
                    let s = &(&(xi - &inv) * &half) * &CycScalar::i();
                    let copy = sector.slot(k.slot as usize).copy;
                    let other = BaseMode { slot: if copy == 1 { k.slot + 2 } else { k.slot - 2 }, ..base };
                    if copy == 1 {
                        vec![(base, c), (other, -&s)]
                    } else {
                        vec![(other, s), (base, c)]
                    }
                }
            }
        }
    })
}

/// Matrix of a VOSA automorphism on the enumerated basis of an untwisted
/// sector: each creation operator is replaced by its image and the
/// product is re-expanded, so Koszul signs come from reordering.
pub fn vosa_automorphism(kind: &AutomorphismKind, sector: &Arc<Sector>, basis: &Basis) -> Result<SparseMatrix, Error> {
    let spec = sector.spec();
    if !is_untwisted(spec) {
        return Err(Error::Invalid("automorphisms act on untwisted sectors".into()));
    }
    match kind {
        AutomorphismKind::Parity => {}
        AutomorphismKind::Kappa | AutomorphismKind::SigmaXi(_) => {
            if !is_orthonormal_pair(spec) && !is_charged_pair(spec) {
                return Err(Error::Invalid(format!("{kind:?} acts on V⊗V")));
            }
            if let AutomorphismKind::SigmaXi(xi) = kind {
                if xi.multiplicative_order(2 * xi.conductor().max(1)).is_none() {
                    return Err(Error::Invalid(format!("{xi} is not a root of unity")));
                }
            }
        }
        AutomorphismKind::KappaTilde => {
            if !is_orthonormal_pair(spec) {
                return Err(Error::Invalid("the swap of tensor factors needs the orthonormal V⊗V layout".into()));
            }
        }
        AutomorphismKind::Rotation { cos, sin } => {
            if !is_orthonormal_pair(spec) {
                return Err(Error::Invalid("rotations need the orthonormal V⊗V layout".into()));
            }
            if &(cos * cos) + &(sin * sin) != CycScalar::one() {
                return Err(Error::Invalid(format!("cos² + sin² must be 1, got cos = {cos}, sin = {sin}")));
            }
        }
    }
    let mut cols = Vec::with_capacity(basis.len());
    for m in basis.monomials() {
        let mut s = State::vacuum();
        for (k, e) in m.factors().iter().rev() {
            let image = key_image(kind, sector, k)?;
            let index = -&k.grade();
            for _ in 0..*e {
                let mut next = State::zero();
                for (b, c) in &image {
                    next.add_scaled(&sector.apply_mode(b, &index, &s)?, c);
                }
                s = next;
            }
        }
        let mut col = Vec::new();
        for (m2, c) in s.iter() {
            let i = basis
                .position(m2)
                .ok_or_else(|| Error::Internal(format!("automorphism image {m2} outside the basis")))?;
            col.push((i, c.clone()));
        }
        cols.push(col);
    }
    Ok(SparseMatrix::from_columns(basis.len(), cols))
}
