//! Truncated q-series: η, the Weber functions and a lattice theta series.

use n2vosa::qseries::{eta_series, theta_series, weber_series, Weber};
use n2vosa::scalar::{q, CycScalar, Rational};
use n2vosa::verify::weber_identities;

fn main() -> Result<(), n2vosa::Error> {
    let order = Rational::from_int(6);
    let eta = eta_series(&Rational::one(), &order)?;
    println!("η(q)      = {eta}");
    println!("1/η(q)    = {}", eta.reciprocal()?);
    println!("𝔣(q)      = {}", weber_series(Weber::F, &order)?);
    println!("𝔣₂(q)     = {}", weber_series(Weber::F2, &order)?);
    println!("η(q^1/2)  = {}", eta_series(&q(1, 2), &order)?);

    // The A2 root lattice: Θ = 1 + 6q + 0q² + 6q³ + 6q⁴ + ...
    let a2 = vec![vec![2, -1], vec![-1, 2]];
    println!("Θ_A2      = {}", theta_series(&a2, &order)?);

    let prod = weber_series(Weber::F, &order)?
        .mul(&weber_series(Weber::F1, &order)?)
        .mul(&weber_series(Weber::F2, &order)?);
    println!("𝔣𝔣₁𝔣₂    = {prod}");
    assert_eq!(prod.coefficient(&Rational::zero()), CycScalar::sqrt2());

    for (name, rep) in weber_identities(&Rational::from_int(12))? {
        println!("{name}: {}", if rep.matched { "holds" } else { "fails" });
    }
    Ok(())
}
