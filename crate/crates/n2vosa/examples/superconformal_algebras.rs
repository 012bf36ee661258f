//! Presentations of the superconformal algebras, their brackets, the Jacobi
//! identity and spectral flow.

use n2vosa::scalar::{q, Rational};
use n2vosa::superalgebra::{
    homomorphism_check, jacobi_check, spectral_flow, AlgElement, AlgebraMap, Family, Presentation,
};

fn main() -> Result<(), n2vosa::Error> {
    let a0 = Presentation::n2_shifted(Rational::zero());
    let gp = AlgElement::gen(Family::Gp, q(1, 2));
    let gm = AlgElement::gen(Family::Gm, q(-1, 2));
    println!("in {a0}: [G+(1/2), G-(-1/2)] = {}", a0.bracket(&gp, &gm)?);

    let l2 = AlgElement::gen(Family::L, Rational::from_int(2));
    let lm2 = AlgElement::gen(Family::L, Rational::from_int(-2));
    println!("[L(2), L(-2)] = {}", a0.bracket(&l2, &lm2)?);

    for p in [
        Presentation::virasoro(),
        Presentation::n1_ramond(),
        Presentation::n2_shifted(q(1, 3)),
        Presentation::n2_mirror(),
    ] {
        let rep = jacobi_check(&p, &Rational::from_int(2));
        println!("{p}: {} triples, Jacobi {}", rep.triples_checked, if rep.passed() { "holds" } else { "fails" });
    }

    let t = q(1, 3);
    println!("D({t}) L(0) = {}", spectral_flow(&t, &AlgElement::gen(Family::L, Rational::zero()))?);
    println!("D({t}) G+(1/6) = {}", spectral_flow(&t, &AlgElement::gen(Family::Gp, q(1, 6)))?);

    let src = Presentation::n2_shifted(-&t);
    let rep = homomorphism_check(&AlgebraMap::SpectralFlow(t.clone()), &src, &a0, &Rational::from_int(2));
    println!("D({t}): {src} -> {a0} is a homomorphism: {}", rep.passed());
    Ok(())
}
