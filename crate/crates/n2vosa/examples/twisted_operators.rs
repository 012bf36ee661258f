//! Generator modes on twisted sectors, and the same modes rebuilt from the
//! iterate formula.

use n2vosa::fock::{Basis, State};
use n2vosa::operators::{to_matrix, FamilyMode, OperatorFamily, Preset};
use n2vosa::scalar::Rational;
use n2vosa::superalgebra::{Family, GenSymbol};

fn main() -> Result<(), n2vosa::Error> {
    let l0 = GenSymbol::new(Family::L, Rational::zero());
    for p in [
        Preset::SigmaFermion,
        Preset::KappaBoson,
        Preset::MirrorKappa,
        Preset::SigmaXi { k: 3, j: 1 },
        Preset::SigmaXi { k: 4, j: 1 },
    ] {
        let fam = OperatorFamily::preset(p, 1)?;
        let vac = fam.op(&l0)?.apply(&State::vacuum())?;
        println!("{p:<28} L(0)1 = {vac}");
    }

    let fam = OperatorFamily::preset(Preset::SigmaFermion, 1)?;
    println!("\n{}", fam.build_generator(&GenSymbol::new(Family::L, Rational::from_int(-1)))?);

    // L(n) = ω_{n+1} with ω = (1/2)ψ(-3/2)ψ(-1/2)1 run through the iterate formula.
    let basis = Basis::new(fam.sector(), &Rational::from_int(2));
    let omega = fam.fermion_conformal_family(1)?;
    for n in -2..=2 {
        let rebuilt = to_matrix(&FamilyMode::new(omega.clone(), Rational::from_int(n + 1))?, &basis)?;
        let closed = to_matrix(&fam.build_generator(&GenSymbol::new(Family::L, Rational::from_int(n)))?, &basis)?;
        println!("L({n:>2}): iterate formula {} closed form", if rebuilt == closed { "==" } else { "!=" });
    }
    Ok(())
}
