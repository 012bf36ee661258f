//! Exact scalars: rationals and elements of cyclotomic fields ℚ(ζ_n).
//!
//! Every coefficient the library produces lives in some ℚ(ζ_n). Values with
//! different conductors are combined by embedding both into ℚ(ζ_lcm).

mod cyclotomic;
mod rational;

pub use cyclotomic::{totient, CycScalar};
pub use rational::{q, Rational};

use crate::Error;

/// Named constants that can be embedded as cyclotomic scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Rational(Rational),
    I,
    Sqrt2,
    /// ζ_n^k
    Zeta(u32, i64),
}

pub fn embed_symbol(symbol: &Symbol) -> Result<CycScalar, Error> {
    match symbol {
        Symbol::Rational(q) => Ok(CycScalar::from_rational(q.clone())),
        Symbol::I => Ok(CycScalar::i()),
        Symbol::Sqrt2 => Ok(CycScalar::sqrt2()),
        Symbol::Zeta(n, k) => CycScalar::zeta(*n, *k),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Invert,
}

/// Binary or unary field operation; `b` is ignored for `Neg` and `Invert`.
pub fn scalar_op(a: &CycScalar, b: &CycScalar, op: ScalarOp) -> Result<CycScalar, Error> {
    match op {
        ScalarOp::Add => Ok(a + b),
        ScalarOp::Mul => Ok(a * b),
        ScalarOp::Neg => Ok(-a),
        ScalarOp::Invert => a.inv(),
    }
}
