//! Automorphisms of V⊗V as matrices, and the graded dimensions of their
//! eigenspaces.

use n2vosa::fock::Basis;
use n2vosa::operators::{apply_matrix, vosa_automorphism, AutomorphismKind, OperatorFamily, Preset};
use n2vosa::scalar::{q, CycScalar, Rational};
use n2vosa::verify::{current_vector, fixed_subspace_dims};

fn main() -> Result<(), n2vosa::Error> {
    let fam = OperatorFamily::preset(Preset::N2Free, 1)?;
    let basis = Basis::new(fam.sector(), &Rational::from_int(2));
    let mu = current_vector(fam.sector())?;
    println!("μ = {mu}");

    let half = CycScalar::sqrt2().scale(&q(1, 2));
    for (name, kind) in [
        ("κ", AutomorphismKind::Kappa),
        ("κ̃", AutomorphismKind::KappaTilde),
        ("parity", AutomorphismKind::Parity),
        ("rotation by π/4", AutomorphismKind::Rotation { cos: half.clone(), sin: half.clone() }),
    ] {
        let m = vosa_automorphism(&kind, fam.sector(), &basis)?;
        println!("\n{name}: μ ↦ {}", apply_matrix(&m, &basis, &mu)?);
        for space in fixed_subspace_dims(&m, &basis, fam.sector())? {
            println!("  eigenvalue {:<12} {}", space.eigenvalue.to_string(), space.series);
        }
    }
    Ok(())
}
