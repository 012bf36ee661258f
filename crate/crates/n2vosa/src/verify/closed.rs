use serde::Serialize;

use super::{compare_series, DimensionReport};
use crate::qseries::{charged_product, eta_series, weber_series, BiSeries, PuiseuxSeries, Weber};
use crate::scalar::{CycScalar, Rational};
use crate::Error;

/// Closed-form characters of the preset sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedForm {
    /// η^{−d}
    EtaInverse,
    /// 𝔣^d
    WeberF,
    /// 𝔣₁^d
    WeberF1,
    /// C_d 𝔣₂^d
    WeberF2,
    /// C_d (𝔣₂/η)^d
    F2OverEta,
    /// (η(q)/η(q^{1/2}))^d
    Kappa,
    /// C_d (𝔣₂(q^{1/2})/η(q^{1/2}))^d
    Mirror,
    /// q^{−d/24 + θ²d/2} η^{−2d} ∏ (1 + q^r)^d over r > 0 in ℤ+1/2∓θ, θ = j/k
    SigmaXi { k: i64, j: i64 },
}

impl ClosedForm {
    pub const NAMES: [&'static str; 8] =
        ["eta-inverse", "weber-f", "weber-f1", "weber-f2", "f2-over-eta", "kappa", "mirror", "sigma-xi"];

    pub fn parse(name: &str, k: i64, j: i64) -> Result<Self, Error> {
        Ok(match name {
            "eta-inverse" => ClosedForm::EtaInverse,
            "weber-f" => ClosedForm::WeberF,
            "weber-f1" => ClosedForm::WeberF1,
            "weber-f2" => ClosedForm::WeberF2,
            "f2-over-eta" => ClosedForm::F2OverEta,
            "kappa" => ClosedForm::Kappa,
            "mirror" => ClosedForm::Mirror,
            "sigma-xi" => ClosedForm::SigmaXi { k, j },
            other => {
                return Err(Error::Invalid(format!(
                    "unknown closed form {other}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

/// −d/24 + θ²d/2 with θ taken in (−1/2, 1/2].
fn sigma_xi_lead(theta: &Rational, d: &Rational) -> Rational {
    let mut t = theta.fract();
    if t > Rational::new(1, 2) {
        t = &t - &Rational::one();
    }
    &(d * &Rational::new(-1, 24)) + &(&(&t * &t) * &(d * &Rational::new(1, 2)))
}

/// √2 for odd d, 1 for even d.
pub fn c_d(d: u32) -> CycScalar {
    if d % 2 == 1 {
        CycScalar::sqrt2()
    } else {
        CycScalar::one()
    }
}

/// The closed form, exact below `order` (or below a smaller bound reported
/// as the series truncation).
pub fn closed_form(form: ClosedForm, d: u32, order: &Rational) -> Result<PuiseuxSeries, Error> {
    let d64 = d as i64;
    let half = Rational::new(1, 2);
    let pad = &(order * &r(2)) + &r(2);
    Ok(match form {
        ClosedForm::EtaInverse => eta_series(&r(1), &pad)?.pow(-d64)?,
        ClosedForm::WeberF => weber_series(Weber::F, &pad)?.pow(d64)?,
        ClosedForm::WeberF1 => weber_series(Weber::F1, &pad)?.pow(d64)?,
        ClosedForm::WeberF2 => weber_series(Weber::F2, &pad)?.pow(d64)?.scale(&c_d(d)),
        ClosedForm::F2OverEta => {
            let f2 = weber_series(Weber::F2, &pad)?;
            let eta = eta_series(&r(1), &pad)?;
            f2.mul(&eta.reciprocal()?).pow(d64)?.scale(&c_d(d))
        }
        ClosedForm::Kappa => {
            let num = eta_series(&r(1), &pad)?;
            let den = eta_series(&half, &pad)?;
            num.mul(&den.reciprocal()?).pow(d64)?
        }
        ClosedForm::Mirror => {
            let f2 = weber_series(Weber::F2, &pad)?.substitute(&half)?;
            let eta = eta_series(&half, &pad)?;
            f2.mul(&eta.reciprocal()?).pow(d64)?.scale(&c_d(d))
        }
        ClosedForm::SigmaXi { k, j } => {
            let one = CycScalar::one();
            let dr = r(d64);
            let theta = Rational::new(j, k);
            let lead = sigma_xi_lead(&theta, &dr);
            let a = (&half - &theta).fract();
            let b = (&half + &theta).fract();
            let prod = |first: Rational| -> PuiseuxSeries {
                let first = if first.is_zero() { r(1) } else { first };
                crate::qseries::progression_product(&one, &first, &r(1), &pad)
            };
            let eta = eta_series(&r(1), &pad)?;
            eta.pow(-2 * d64)?.mul(&prod(a).mul(&prod(b)).pow(d64)?).shift(&lead)
        }
    }
    .with_trunc(Some(order.clone())))
}

/// (1 + p^a q^r) products of the p,q-characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PqClosedForm {
    /// q^{−d/24} η^{−2d} ∏_{n ≥ 1} (1 + p q^{n−1/2})^d (1 + p^{−1} q^{n−1/2})^d
    FreePair,
    /// q^{−d/24 + θ²d/2} η^{−2d} ∏_{r ∈ ℤ+1/2−θ, r > 0} (1 + p^{−1}q^r)^d
    /// ∏_{r ∈ ℤ+1/2+θ, r > 0} (1 + p q^r)^d, with θ = j/k taken in (−1/2, 1/2]
    SigmaXi { k: i64, j: i64 },
}

impl PqClosedForm {
    pub const NAMES: [&'static str; 2] = ["free-pair", "sigma-xi"];

    pub fn parse(name: &str, k: i64, j: i64) -> Result<Self, Error> {
        match name {
            "free-pair" => Ok(PqClosedForm::FreePair),
            "sigma-xi" => Ok(PqClosedForm::SigmaXi { k, j }),
            other => Err(Error::Invalid(format!(
                "unknown p,q closed form {other}; expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }
}

pub fn pq_closed_form(form: PqClosedForm, d: u32, order: &Rational, p_bound: i64) -> Result<BiSeries, Error> {
    let d64 = d as i64;
    let half = Rational::new(1, 2);
    let pad = &(order * &r(2)) + &r(2);
    let dr = r(d64);
    let (lead, minus_first, plus_first) = match form {
        PqClosedForm::FreePair => (&dr * &Rational::new(-1, 24), half.clone(), half.clone()),
        PqClosedForm::SigmaXi { k, j } => {
            let theta = Rational::new(j, k);
            let nz = |x: Rational| if x.is_zero() { r(1) } else { x };
            (
                sigma_xi_lead(&theta, &dr),
                nz((&half - &theta).fract()),
                nz((&half + &theta).fract()),
            )
        }
    };
    let front = eta_series(&r(1), &pad)?.pow(-2 * d64)?.shift(&lead);
    let mut out = BiSeries::from_q_series(&front, 0, p_bound);
    for _ in 0..d {
        out = out.mul(&charged_product(-1, &minus_first, &pad, p_bound));
        out = out.mul(&charged_product(1, &plus_first, &pad, p_bound));
    }
    Ok(out.with_trunc(Some(order.clone())))
}

/// The four Weber identities, each compared below `order`.
pub fn weber_identities(order: &Rational) -> Result<Vec<(String, DimensionReport)>, Error> {
    let pad = &(order * &r(2)) + &r(2);
    let f = weber_series(Weber::F, &pad)?;
    let f1 = weber_series(Weber::F1, &pad)?;
    let f2 = weber_series(Weber::F2, &pad)?;
    let eta = eta_series(&r(1), &pad)?;
    let eta2 = eta_series(&r(2), &pad)?;
    let eta_half = eta_series(&Rational::new(1, 2), &pad)?;
    let cut = |s: PuiseuxSeries| s.with_trunc(Some(order.clone()));
    let sqrt2 = PuiseuxSeries::constant(CycScalar::sqrt2(), None);
    Ok(vec![
        ("f f1 f2 = sqrt2".to_string(), compare_series(&cut(f.mul(&f1).mul(&f2)), &sqrt2)),
        (
            "f = eta^2 / (eta(q^2) eta(q^1/2))".to_string(),
            compare_series(&cut(f.clone()), &cut(eta.mul(&eta).mul(&eta2.mul(&eta_half).reciprocal()?))),
        ),
        ("f1 = eta(q^1/2) / eta".to_string(), compare_series(&cut(f1), &cut(eta_half.mul(&eta.reciprocal()?)))),
        (
            "f2 = sqrt2 eta(q^2) / eta".to_string(),
            compare_series(&cut(f2), &cut(eta2.mul(&eta.reciprocal()?).scale(&CycScalar::sqrt2()))),
        ),
    ])
}
