//! Superconformal relations and central charges measured on sectors.

use std::time::Instant;

use n2vosa::operators::{OperatorFamily, Preset};
use n2vosa::scalar::{q, Rational};
use n2vosa::verify::{check_derivative, check_relations};

fn main() -> Result<(), n2vosa::Error> {
    let bound = Rational::from_int(2);
    for (p, d, cutoff) in [
        (Preset::Bos, 2, Rational::from_int(3)),
        (Preset::Fer, 1, q(7, 2)),
        (Preset::N1Free, 1, Rational::from_int(3)),
        (Preset::RamondN1, 1, Rational::from_int(3)),
        (Preset::N2Free, 1, q(5, 2)),
        (Preset::MirrorKappa, 1, Rational::from_int(2)),
        (Preset::SigmaXi { k: 3, j: 1 }, 1, Rational::from_int(3)),
    ] {
        let fam = OperatorFamily::preset(p, d)?;
        for pres in p.presentations() {
            let start = Instant::now();
            let rep = check_relations(&fam, &pres, &bound, &cutoff)?;
            println!(
                "{:<32} {:<34} c = {:?}, {} pairs, {} failures ({:.2?})",
                fam.sector().to_string(),
                rep.suite,
                rep.central_charge,
                rep.pairs_checked,
                rep.failures.len(),
                start.elapsed()
            );
        }
        let der = check_derivative(&fam, &bound, &cutoff)?;
        println!("{:<32} derivative property: {} checks, {} failures", "", der.checks, der.failures.len());
    }
    Ok(())
}
