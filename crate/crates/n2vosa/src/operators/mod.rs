//! Mode operators on Fock spaces: normal-ordered bilinears for every
//! superconformal generator, modes of iterated twisted vertex operators,
//! and automorphism matrices.

mod auto;
mod family;
mod matrix;
mod quad;
mod residue;

pub use auto::{vosa_automorphism, AutomorphismKind};
pub use family::{OperatorFamily, Preset};
pub use matrix::SparseMatrix;
pub use quad::{QuadOperator, Term};
pub use residue::{residue_mode, FamilyMode, FieldFamily, IterateFamily, ModeFamily, SumFamily, TableFamily, VacuumFamily};

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::fock::{Basis, Monomial, State};
use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// A linear operator on a Fock space, given by its action on monomials.
pub trait ModeOp: Send + Sync {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error>;

    fn is_odd(&self) -> bool;

    fn apply(&self, s: &State) -> Result<State, Error> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&self.apply_mono(m)?, c);
        }
        Ok(out)
    }
}

pub type Op = Arc<dyn ModeOp>;

/// Per-monomial memo shared by the operator implementations.
#[derive(Default)]
pub(crate) struct Memo {
    map: RwLock<HashMap<Monomial, State>>,
}

impl Memo {
    pub(crate) fn get_or(&self, m: &Monomial, f: impl FnOnce() -> Result<State, Error>) -> Result<State, Error> {
        if let Some(s) = self.map.read().unwrap().get(m) {
            return Ok(s.clone());
        }
        let s = f()?;
        self.map.write().unwrap().insert(m.clone(), s.clone());
        Ok(s)
    }
}

/// Σ c_k op_k
pub struct SumOp {
    parts: Vec<(CycScalar, Op)>,
    odd: bool,
    memo: Memo,
}

impl SumOp {
    pub fn new(parts: Vec<(CycScalar, Op)>) -> Result<Self, Error> {
        let odd = parts.first().map(|(_, o)| o.is_odd()).unwrap_or(false);
        if parts.iter().any(|(_, o)| o.is_odd() != odd) {
            return Err(Error::Invalid("sum of operators with different parity".into()));
        }
        Ok(SumOp { parts, odd, memo: Memo::default() })
    }
}

impl ModeOp for SumOp {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error> {
        self.memo.get_or(m, || {
            let mut out = State::zero();
            for (c, op) in &self.parts {
                out.add_scaled(&op.apply_mono(m)?, c);
            }
            Ok(out)
        })
    }

    fn is_odd(&self) -> bool {
        self.odd
    }
}

/// Identity operator.
pub struct IdentityOp;

impl ModeOp for IdentityOp {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error> {
        Ok(State::monomial(m.clone()))
    }

    fn is_odd(&self) -> bool {
        false
    }
}

/// `op` applied to `s`, keeping monomials of intrinsic weight ≤ cutoff.
pub fn act(op: &dyn ModeOp, s: &State, cutoff: &Rational) -> Result<State, Error> {
    Ok(op.apply(s)?.truncated(cutoff))
}

/// Matrix of `op` on the basis; images above the cutoff are dropped.
pub fn to_matrix(op: &dyn ModeOp, basis: &Basis) -> Result<SparseMatrix, Error> {
    let cols: Vec<Vec<(usize, CycScalar)>> = basis
        .monomials()
        .par_iter()
        .map(|m| {
            let image = op.apply_mono(m)?;
            Ok(image.iter().filter_map(|(m2, c)| basis.position(m2).map(|i| (i, c.clone()))).collect())
        })
        .collect::<Result<_, Error>>()?;
    Ok(SparseMatrix::from_columns(basis.len(), cols))
}

/// Change in intrinsic weight caused by a mode of index n.
pub fn weight_shift(index: &Rational) -> Rational {
    -index
}

/// A single mode of a free field.
pub struct FieldOp {
    sector: Arc<crate::fock::Sector>,
    field: crate::fock::Field,
    index: Rational,
}

impl FieldOp {
    pub fn new(sector: Arc<crate::fock::Sector>, field: crate::fock::Field, index: Rational) -> Result<Self, Error> {
        let o = sector.field_support(&field)?;
        if !(&index - &o).is_integer() {
            return Err(Error::UnsupportedMode {
                symbol: format!("{}({index})", field.name),
                support: format!("Z+{o}"),
            });
        }
        Ok(FieldOp { sector, field, index })
    }
}

impl ModeOp for FieldOp {
    fn apply_mono(&self, m: &Monomial) -> Result<State, Error> {
        self.sector.apply_field_mono(&self.field, &self.index, m)
    }

    fn is_odd(&self) -> bool {
        self.field.is_odd()
    }
}

/// A matrix over `basis` applied to a state supported on it.
pub fn apply_matrix(mat: &SparseMatrix, basis: &Basis, s: &State) -> Result<State, Error> {
    let mut out = State::zero();
    for (m, c) in s.iter() {
        let j = basis.position(m).ok_or_else(|| Error::TooShallow(format!("{m} lies above the cutoff {}", basis.cutoff())))?;
        for (i, x) in mat.column(j) {
            out.add_term(basis.monomials()[*i].clone(), &(x * c));
        }
    }
    Ok(out)
}
