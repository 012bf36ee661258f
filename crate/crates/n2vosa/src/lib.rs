//! Exact free-field constructions of N=1 and N=2 vertex operator
//! superalgebras and their twisted sectors, with machine verification of
//! superconformal relations, central charges, automorphisms and characters.

pub mod cli;
pub mod fock;
pub mod operators;
pub mod qseries;
pub mod scalar;
pub mod superalgebra;
pub mod verify;

use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported mode {symbol}; support is {support}")]
    UnsupportedMode { symbol: String, support: String },
    #[error("truncation too shallow: {0}")]
    TooShallow(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
