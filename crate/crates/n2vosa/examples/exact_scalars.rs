//! Exact arithmetic in ℚ and in cyclotomic fields.

use n2vosa::scalar::{q, CycScalar, Rational};

fn main() -> Result<(), n2vosa::Error> {
    let a = q(3, 4);
    let b: Rational = "-5/6".parse()?;
    println!("{a} + {b} = {}", &a + &b);
    println!("({a})·({b}) = {}", &a * &b);
    println!("fract({b}) = {}", b.fract());

    let i = CycScalar::i();
    println!("i² = {}", &i * &i);

    let s = CycScalar::sqrt2();
    println!("√2 · √2 = {}", &s * &s);

    // A primitive cube root of unity: ξ³ = 1 and 1 + ξ + ξ² = 0.
    let xi = CycScalar::zeta(3, 1)?;
    let xi2 = xi.pow(2)?;
    println!("ξ = {xi}, ξ³ = {}", xi.pow(3)?);
    println!("1 + ξ + ξ² = {}", &(&CycScalar::one() + &xi) + &xi2);
    println!("ξ⁻¹ = {}, order {:?}", xi.inv()?, xi.multiplicative_order(24));

    // Mixing conductors lifts to a common field.
    println!("√2 + ξ = {}", &s + &xi);
    Ok(())
}
