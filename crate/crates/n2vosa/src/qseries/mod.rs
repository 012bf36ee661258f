//! Truncated q-series and (p, q)-series with exact coefficients, together
//! with the eta, Weber and lattice theta products used for characters.

mod biseries;
mod puiseux;
mod theta;

pub use biseries::BiSeries;
pub use puiseux::PuiseuxSeries;
pub use theta::theta_series;

use crate::scalar::{CycScalar, Rational};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Power(i64),
    Reciprocal,
}

/// `b` is ignored for `Power` and `Reciprocal`.
pub fn series_op(a: &PuiseuxSeries, b: &PuiseuxSeries, op: SeriesOp) -> Result<PuiseuxSeries, Error> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::Power(k) => a.pow(k),
        SeriesOp::Reciprocal => a.reciprocal(),
    }
}

/// ∏_{n ≥ 0} (1 + c·q^{first + n·step}), exact below `trunc`.
pub fn progression_product(
    c: &CycScalar,
    first: &Rational,
    step: &Rational,
    trunc: &Rational,
) -> PuiseuxSeries {
    assert!(first.is_positive() && step.is_positive());
    let t = Some(trunc.clone());
    let mut acc = PuiseuxSeries::one(t.clone());
    let mut e = first.clone();
    while &e < trunc {
        let factor = PuiseuxSeries::from_terms(
            [(Rational::zero(), CycScalar::one()), (e.clone(), c.clone())],
            t.clone(),
        );
        acc = acc.mul(&factor);
        e = &e + step;
    }
    acc
}

fn check_order(order: &Rational) -> Result<(), Error> {
    if order.is_positive() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("series order must be positive, got {order}")))
    }
}

/// q^{a/24} ∏_{n ≥ 1} (1 − q^{an}), exact below `order`.
pub fn eta_series(scale: &Rational, order: &Rational) -> Result<PuiseuxSeries, Error> {
    if !scale.is_positive() {
        return Err(Error::Invalid(format!("eta scale must be positive, got {scale}")));
    }
    check_order(order)?;
    let lead = scale * &Rational::new(1, 24);
    let inner = progression_product(&CycScalar::from_int(-1), scale, scale, &(order - &lead));
    Ok(inner.shift(&lead))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weber {
    F,
    F1,
    F2,
}

/// The Weber functions 𝔣, 𝔣₁, 𝔣₂, exact below `order`.
pub fn weber_series(which: Weber, order: &Rational) -> Result<PuiseuxSeries, Error> {
    check_order(order)?;
    let half = Rational::new(1, 2);
    let one = Rational::one();
    Ok(match which {
        Weber::F | Weber::F1 => {
            let lead = Rational::new(-1, 48);
            let sign = if which == Weber::F { 1 } else { -1 };
            progression_product(&CycScalar::from_int(sign), &half, &one, &(order - &lead)).shift(&lead)
        }
        Weber::F2 => {
            let lead = Rational::new(1, 24);
            progression_product(&CycScalar::one(), &one, &one, &(order - &lead))
                .shift(&lead)
                .scale(&CycScalar::sqrt2())
        }
    })
}

/// q ↦ q^scale.
pub fn substitute(a: &PuiseuxSeries, scale: &Rational) -> Result<PuiseuxSeries, Error> {
    a.substitute(scale)
}

/// ∏_{r ∈ first + ℤ≥0} (1 + p^a q^r) as a (p, q)-series exact below `trunc`.
pub fn charged_product(a: i64, first: &Rational, trunc: &Rational, p_bound: i64) -> BiSeries {
    let t = Some(trunc.clone());
    let mut acc = BiSeries::zero(t.clone(), p_bound);
    acc.add_term(0, &Rational::zero(), CycScalar::one());
    let mut e = first.clone();
    while &e < trunc {
        let mut factor = BiSeries::zero(t.clone(), p_bound);
        factor.add_term(0, &Rational::zero(), CycScalar::one());
        factor.add_term(a, &e, CycScalar::one());
        acc = acc.mul(&factor);
        e = &e + &Rational::one();
    }
    acc
}
