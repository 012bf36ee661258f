//! Graded dimensions of sectors against their eta and Weber closed forms,
//! and a p,q-refined character.

use n2vosa::operators::{OperatorFamily, Preset};
use n2vosa::scalar::{q, Rational};
use n2vosa::verify::{
    closed_form, compare_biseries, compare_series, graded_dimension, pq_closed_form, ClosedForm, GradedDimension,
    PqClosedForm, Variant,
};

fn main() -> Result<(), n2vosa::Error> {
    let order = Rational::from_int(4);
    for (p, d, form) in [
        (Preset::Bos, 1, ClosedForm::EtaInverse),
        (Preset::Fer, 2, ClosedForm::WeberF),
        (Preset::SigmaFermion, 1, ClosedForm::WeberF2),
        (Preset::RamondN1, 1, ClosedForm::F2OverEta),
        (Preset::KappaBoson, 1, ClosedForm::Kappa),
        (Preset::MirrorKappa, 1, ClosedForm::Mirror),
        (Preset::SigmaXi { k: 3, j: 1 }, 1, ClosedForm::SigmaXi { k: 3, j: 1 }),
    ] {
        let fam = OperatorFamily::preset(p, d)?;
        let cutoff = &order + &(fam.central_charge_claim() / &Rational::from_int(24));
        let dim = graded_dimension(&fam, &cutoff, Variant::Dim)?.q().expect("q-series");
        let rep = compare_series(&dim.with_trunc(Some(order.clone())), &closed_form(form, d, &order)?);
        println!("{p} (d = {d}) vs {form:?}: {}", if rep.matched { "equal" } else { "different" });
        println!("    {}", rep.computed);
    }

    let fam = OperatorFamily::preset(Preset::N2FreeCharged, 1)?;
    let order = q(5, 2);
    if let GradedDimension::Pq { series, p_shift } = graded_dimension(&fam, &order, Variant::Pq { p_bound: 3 })? {
        let closed = pq_closed_form(PqClosedForm::FreePair, 1, &order, 3)?;
        println!("\ntr p^J(0) q^(L(0)-c/24) on V⊗V, vacuum charge {p_shift}:");
        println!("    {series}");
        println!("    matches the product formula: {}", compare_biseries(&series, &closed).matched);
    }
    Ok(())
}
