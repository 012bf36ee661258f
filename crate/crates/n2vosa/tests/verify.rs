use n2vosa::fock::{Basis, Monomial};
use n2vosa::operators::{apply_matrix, to_matrix, vosa_automorphism, AutomorphismKind, OperatorFamily, Preset};
use n2vosa::qseries::{charged_product, eta_series, weber_series, BiSeries, PuiseuxSeries, Weber};
use n2vosa::scalar::{q, CycScalar, Rational};
use n2vosa::superalgebra::{Family, GenSymbol, Presentation};
use n2vosa::verify::*;

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn family(p: Preset, d: u32) -> OperatorFamily {
    OperatorFamily::preset(p, d).unwrap()
}

fn relations(p: Preset, d: u32, cutoff: Rational) -> RelationReport {
    let fam = family(p, d);
    let rep = check_relations(&fam, &fam.presentation(), &r(2), &cutoff).unwrap();
    assert!(rep.failures.is_empty(), "{:?}", rep.failures);
    rep
}

#[test]
fn boson_pair_is_virasoro_with_c_2() {
    let rep = relations(Preset::Bos, 2, r(3));
    assert_eq!(rep.central_charge, CentralCharge::Consistent(r(2)));
    assert!(rep.passed());
}

#[test]
fn single_fermion_has_c_one_half() {
    let rep = relations(Preset::Fer, 1, q(7, 2));
    assert_eq!(rep.central_charge, CentralCharge::Consistent(q(1, 2)));
}

#[test]
fn ramond_pair_is_n2_ramond_with_c_3() {
    let fam = family(Preset::RamondN2, 1);
    for pres in Preset::RamondN2.presentations() {
        let rep = check_relations(&fam, &pres, &r(2), &r(2)).unwrap();
        assert!(rep.passed(), "{pres}: {:?}", rep.failures);
        assert_eq!(rep.central_charge, CentralCharge::Consistent(r(3)));
    }
}

#[test]
fn wrong_constant_is_caught() {
    // Shifting the claimed central charge must flip the verdict.
    let fam = family(Preset::Bos, 1);
    let rep = check_relations(&fam, &Presentation::virasoro(), &r(2), &r(3)).unwrap();
    assert!(rep.passed());
    let mut tampered = rep.clone();
    tampered.central_charge_claim = r(2);
    assert!(!tampered.passed());
}

#[test]
fn derivative_property_in_twisted_sectors() {
    for (p, d) in [(Preset::Bos, 1), (Preset::SigmaFermion, 1), (Preset::KappaBoson, 1), (Preset::SigmaXi { k: 3, j: 1 }, 1)] {
        let rep = check_derivative(&family(p, d), &r(2), &r(2)).unwrap();
        assert!(rep.passed(), "{p}: {:?}", rep.failures);
        assert!(rep.checks > 0);
    }
}

fn q_dim(p: Preset, d: u32, cutoff: Rational, v: Variant) -> PuiseuxSeries {
    graded_dimension(&family(p, d), &cutoff, v).unwrap().q().unwrap()
}

fn assert_match(computed: &PuiseuxSeries, closed: &PuiseuxSeries, below: Rational) {
    let rep = compare_series(computed, closed);
    assert!(rep.matched, "{:?}", rep.first_difference);
    let t = rep.truncation.clone().unwrap();
    assert!(t >= below, "compared only below {t}");
}

#[test]
fn boson_character_is_inverse_eta() {
    for d in 1..=2 {
        let eta = eta_series(&r(1), &r(7)).unwrap().pow(-(d as i64)).unwrap();
        assert_match(&q_dim(Preset::Bos, d, q(13, 2), Variant::Dim), &eta, r(6));
    }
}

#[test]
fn fermion_characters_are_weber_functions() {
    for d in 1..=2 {
        let f = weber_series(Weber::F, &r(7)).unwrap().pow(d as i64).unwrap();
        let f1 = weber_series(Weber::F1, &r(7)).unwrap().pow(d as i64).unwrap();
        assert_match(&q_dim(Preset::Fer, d, q(13, 2), Variant::Dim), &f, r(6));
        assert_match(&q_dim(Preset::Fer, d, q(13, 2), Variant::Sdim), &f1, r(6));
    }
    let f2 = weber_series(Weber::F2, &r(7)).unwrap();
    assert_match(&q_dim(Preset::SigmaFermion, 2, q(13, 2), Variant::Dim), &f2.pow(2).unwrap(), r(6));
    assert_match(&q_dim(Preset::SigmaFermion, 1, q(13, 2), Variant::Dim), &f2.scale(&CycScalar::sqrt2()), r(6));
}

#[test]
fn charged_pair_pq_character() {
    let fam = family(Preset::N2FreeCharged, 1);
    let GradedDimension::Pq { series, p_shift } = graded_dimension(&fam, &r(4), Variant::Pq { p_bound: 4 }).unwrap() else {
        panic!()
    };
    assert_eq!(p_shift, r(0));
    let t = q(9, 2);
    let front = eta_series(&r(1), &t).unwrap().pow(-2).unwrap().shift(&q(-1, 24));
    let closed = BiSeries::from_q_series(&front, 0, 4)
        .mul(&charged_product(1, &q(1, 2), &t, 4))
        .mul(&charged_product(-1, &q(1, 2), &t, 4));
    let rep = compare_biseries(&series, &closed);
    assert!(rep.matched, "{:?}", rep.first_difference);
}

#[test]
fn l0_must_be_diagonal_for_pq() {
    // J(0) mixes the two real fermions in the orthonormal layout.
    let err = graded_dimension(&family(Preset::N2Free, 1), &r(1), Variant::Pq { p_bound: 2 }).unwrap_err();
    assert!(err.to_string().contains("not diagonal"), "{err}");
}

#[test]
fn ramond_split_halves_the_character() {
    let fam = family(Preset::SigmaFermion, 1);
    let split = ramond_split(&fam, &r(4)).unwrap();
    let full = q_dim(Preset::SigmaFermion, 1, r(4), Variant::Dim);
    assert_eq!(split.plus_dim.add(&split.minus_dim), full);
    assert_eq!(split.plus_dim, split.minus_dim);
    // ε(0) preserves each summand: it acts as ±1 on the even part.
    let sector = fam.sector();
    let eps = n2vosa::fock::BaseMode { slot: 0, charge: n2vosa::fock::Charge::Epsilon, flavor: 1 };
    for v in split.plus.iter().chain(&split.minus) {
        let image = sector.apply_mode(&eps, &r(0), v).unwrap();
        assert!(image == *v || image == v.scaled(&CycScalar::from_int(-1)), "{v} -> {image}");
    }
    assert!(ramond_split(&family(Preset::SigmaFermion, 2), &r(2)).is_err());
}

#[test]
fn parity_eigenspaces_are_even_and_odd_strata() {
    let fam = family(Preset::Fer, 1);
    let basis = Basis::new(fam.sector(), &r(4));
    let m = vosa_automorphism(&AutomorphismKind::Parity, fam.sector(), &basis).unwrap();
    let spaces = fixed_subspace_dims(&m, &basis, fam.sector()).unwrap();
    assert_eq!(spaces.len(), 2);
    let mut even = PuiseuxSeries::zero(spaces[0].series.trunc().cloned());
    let mut odd = even.clone();
    for b in basis.monomials() {
        let w = n2vosa::fock::weight_of(b);
        if fam.sector().parity(b) {
            odd.add_term(&w, CycScalar::one());
        } else {
            even.add_term(&w, CycScalar::one());
        }
    }
    assert_eq!(spaces[0].series, even);
    assert_eq!(spaces[1].series, odd);
}

#[test]
fn sigma_xi_fixes_the_current() {
    let fam = family(Preset::N2FreeCharged, 1);
    let basis = Basis::new(fam.sector(), &r(1));
    let xi = CycScalar::zeta(3, 1).unwrap();
    let m = vosa_automorphism(&AutomorphismKind::SigmaXi(xi), fam.sector(), &basis).unwrap();
    let mu = fam.op(&GenSymbol::new(Family::J, r(-1))).unwrap().apply(&n2vosa::fock::State::vacuum()).unwrap();
    assert!(!mu.is_zero());
    assert_eq!(apply_matrix(&m, &basis, &mu).unwrap(), mu);
}

#[test]
fn consequence_identities_hold_for_free_sectors() {
    for (p, d) in [(Preset::Bos, 1), (Preset::Fer, 2), (Preset::N1Free, 1), (Preset::N2Free, 1)] {
        let fam = family(p, d);
        let checks = consequence_identities(&fam).unwrap();
        for c in &checks {
            assert!(c.passed, "{p}: {} ({})", c.name, c.detail);
        }
        if p == Preset::N2Free {
            assert!(checks.iter().any(|c| c.name.starts_with("μ")));
            assert!(checks.iter().any(|c| c.name.starts_with("τ₂τ")));
        }
    }
}

#[test]
fn l0_matrix_is_diagonal_with_weights() {
    let fam = family(Preset::N1Free, 1);
    let basis = Basis::new(fam.sector(), &r(3));
    let l0 = to_matrix(fam.op(&GenSymbol::new(Family::L, r(0))).unwrap().as_ref(), &basis).unwrap();
    for (j, m) in basis.monomials().iter().enumerate() {
        let w = n2vosa::fock::weight_of(m);
        let col = l0.column(j);
        if w.is_zero() {
            assert!(col.is_empty());
        } else {
            assert_eq!(col.to_vec(), vec![(j, CycScalar::from(w))]);
        }
    }
    assert_eq!(basis.position(&Monomial::vacuum()), Some(0));
}

#[test]
fn sector_characters_match_closed_forms() {
    let cases = [
        (Preset::Bos, 2, ClosedForm::EtaInverse),
        (Preset::Fer, 3, ClosedForm::WeberF),
        (Preset::SigmaFermion, 3, ClosedForm::WeberF2),
        (Preset::RamondN1, 1, ClosedForm::F2OverEta),
        (Preset::RamondN1, 2, ClosedForm::F2OverEta),
        (Preset::KappaBoson, 1, ClosedForm::Kappa),
        (Preset::KappaBoson, 2, ClosedForm::Kappa),
        (Preset::MirrorKappa, 1, ClosedForm::Mirror),
        (Preset::SigmaXi { k: 3, j: 1 }, 1, ClosedForm::SigmaXi { k: 3, j: 1 }),
        (Preset::SigmaXi { k: 4, j: 1 }, 1, ClosedForm::SigmaXi { k: 4, j: 1 }),
        (Preset::SigmaXi { k: 3, j: 2 }, 1, ClosedForm::SigmaXi { k: 3, j: 2 }),
        (Preset::SigmaXi { k: 5, j: 2 }, 2, ClosedForm::SigmaXi { k: 5, j: 2 }),
    ];
    for (p, d, form) in cases {
        let computed = q_dim(p, d, r(4), Variant::Dim);
        let closed = closed_form(form, d, &r(4)).unwrap();
        let rep = compare_series(&computed, &closed);
        assert!(rep.matched, "{p} d={d}: {:?}", rep.first_difference);
        assert!(rep.truncation.clone().unwrap() >= q(7, 2), "{p}: {:?}", rep.truncation);
    }
}

#[test]
fn weber_identities_hold() {
    for (name, rep) in weber_identities(&r(12)).unwrap() {
        assert!(rep.matched, "{name}: {:?}", rep.first_difference);
    }
}

#[test]
fn sigma_xi_pq_character() {
    let fam = family(Preset::SigmaXi { k: 3, j: 1 }, 1);
    let GradedDimension::Pq { series, p_shift } = graded_dimension(&fam, &r(3), Variant::Pq { p_bound: 4 }).unwrap() else {
        panic!()
    };
    // The vacuum carries J(0)-charge -1/3, reported as a fractional p-shift.
    assert_eq!(p_shift, q(-1, 3));
    let closed = pq_closed_form(PqClosedForm::SigmaXi { k: 3, j: 1 }, 1, &r(3), 4).unwrap();
    assert!(!compare_biseries(&series, &closed).matched);
    // G^+ lives on Z+5/6, so charge +1 first appears one sixth above the vacuum.
    assert_eq!(series.coefficient(1, &q(7, 72)), CycScalar::one());
    let rep = compare_biseries(&series, &closed.invert_p());
    assert!(rep.matched, "{:?}", rep.first_difference);
}
