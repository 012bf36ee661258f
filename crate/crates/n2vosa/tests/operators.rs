use std::sync::Arc;

use n2vosa::fock::{Basis, Component, Monomial, Species, State};
use n2vosa::operators::{
    act, apply_matrix, residue_mode, to_matrix, vosa_automorphism, AutomorphismKind, FamilyMode, IdentityOp,
    OperatorFamily, Preset, VacuumFamily,
};
use n2vosa::scalar::{q, CycScalar, Rational};
use n2vosa::superalgebra::{Family, GenSymbol};
use n2vosa::verify::{current_vector, superconformal_vector};

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn family(p: Preset, d: u32) -> OperatorFamily {
    OperatorFamily::preset(p, d).unwrap()
}

fn gen(f: Family, n: Rational) -> GenSymbol {
    GenSymbol::new(f, n)
}

#[test]
fn boson_l0_eigenvalue() {
    let fam = family(Preset::Bos, 1);
    let s = fam.sector();
    let a = s.field(Species::Boson, Component::Ortho(1), 1).unwrap();
    let v = s.apply_field(&a, &r(-1), &State::vacuum()).unwrap();
    let image = fam.op(&gen(Family::L, r(0))).unwrap().apply(&v).unwrap();
    assert_eq!(image, v);
}

#[test]
fn twisted_vacuum_energies() {
    for d in 1..=3 {
        let fam = family(Preset::SigmaFermion, d);
        let image = fam.op(&gen(Family::L, r(0))).unwrap().apply(&State::vacuum()).unwrap();
        assert_eq!(image, State::vacuum().scaled(&CycScalar::from(q(d as i64, 16))), "d = {d}");
    }
    // (j/k)² d/2 with j/k taken in (−1/2, 1/2]
    for (k, j, e) in [(3, 1, q(1, 18)), (4, 1, q(1, 32)), (5, 2, q(2, 25)), (3, 2, q(1, 18))] {
        let fam = family(Preset::SigmaXi { k, j }, 1);
        let image = fam.op(&gen(Family::L, r(0))).unwrap().apply(&State::vacuum()).unwrap();
        assert_eq!(image, State::vacuum().scaled(&CycScalar::from(e)), "j/k = {j}/{k}");
    }
}

#[test]
fn vacuum_identities() {
    let fam = family(Preset::N2Free, 1);
    let cutoff = r(3);
    let l = fam.op(&gen(Family::L, r(-1))).unwrap();
    assert!(act(l.as_ref(), &State::vacuum(), &cutoff).unwrap().is_zero());
    let g1 = fam.op(&gen(Family::G1, q(-3, 2))).unwrap();
    assert_eq!(act(g1.as_ref(), &State::vacuum(), &cutoff).unwrap(), superconformal_vector(fam.sector()).unwrap());
    let j = fam.op(&gen(Family::J, r(-1))).unwrap();
    assert_eq!(act(j.as_ref(), &State::vacuum(), &cutoff).unwrap(), current_vector(fam.sector()).unwrap());
}

#[test]
fn identity_and_l0_matrices() {
    let fam = family(Preset::Fer, 1);
    let basis = Basis::new(fam.sector(), &q(3, 2));
    assert_eq!(basis.len(), 3);
    let id = to_matrix(&IdentityOp, &basis).unwrap();
    assert_eq!(id, n2vosa::operators::SparseMatrix::identity(3));
    let l0 = to_matrix(fam.op(&gen(Family::L, r(0))).unwrap().as_ref(), &basis).unwrap();
    let diag: Vec<CycScalar> = (0..3).map(|i| l0.get(i, i)).collect();
    assert_eq!(diag, vec![CycScalar::zero(), CycScalar::from(q(1, 2)), CycScalar::from(q(3, 2))]);
    assert_eq!(l0.nnz(), 2);
}

#[test]
fn odd_modes_flip_parity() {
    let fam = family(Preset::N1Free, 1);
    let basis = Basis::new(fam.sector(), &r(3));
    for n in [q(-3, 2), q(-1, 2), q(1, 2)] {
        let m = to_matrix(fam.op(&gen(Family::GN1, n)).unwrap().as_ref(), &basis).unwrap();
        assert!(!m.is_zero());
        for (j, b) in basis.monomials().iter().enumerate() {
            for (i, _) in m.column(j) {
                assert_ne!(fam.sector().parity(&basis.monomials()[*i]), fam.sector().parity(b));
            }
        }
    }
}

#[test]
fn vacuum_family_is_identity() {
    let fam = family(Preset::SigmaFermion, 1);
    let basis = Basis::new(fam.sector(), &r(2));
    let m = to_matrix(&FamilyMode::new(Arc::new(VacuumFamily), r(-1)).unwrap(), &basis).unwrap();
    assert_eq!(m, n2vosa::operators::SparseMatrix::identity(basis.len()));
}

#[test]
fn sigma_virasoro_from_iterates_matches_closed_form() {
    for d in 1..=2 {
        let fam = family(Preset::SigmaFermion, d);
        let basis = Basis::new(fam.sector(), &r(2));
        let omega = fam.fermion_conformal_family(1).unwrap();
        for n in -2..=2 {
            let rebuilt = to_matrix(&FamilyMode::new(omega.clone(), r(n + 1)).unwrap(), &basis).unwrap();
            let closed = to_matrix(&fam.build_generator(&gen(Family::L, r(n))).unwrap(), &basis).unwrap();
            assert_eq!(rebuilt, closed, "d = {d}, n = {n}");
        }
    }
}

#[test]
fn free_field_iterate_reproduces_the_field() {
    let fam = family(Preset::KappaBoson, 1);
    let s = fam.sector();
    let a = s.field(Species::Boson, Component::Ortho(1), 1).unwrap();
    let basis = Basis::new(s, &r(2));
    let y = fam.free_field_family(&a).unwrap();
    for m in [q(-3, 2), q(-1, 2), q(1, 2)] {
        // a_q = a(q + 1 − Δ) with Δ = 1
        let from_family = to_matrix(&FamilyMode::new(y.clone(), m.clone()).unwrap(), &basis).unwrap();
        let direct = to_matrix(&n2vosa::operators::FieldOp::new(s.clone(), a.clone(), m).unwrap(), &basis).unwrap();
        assert_eq!(from_family, direct);
    }
}

#[test]
fn residue_rejects_wrong_twist_exponent() {
    let fam = family(Preset::SigmaFermion, 1);
    let s = fam.sector();
    let a = s.field(Species::Fermion, Component::Ortho(1), 1).unwrap();
    let err = residue_mode(s, &a, &q(1, 2), Arc::new(VacuumFamily), &r(0)).err().unwrap();
    assert!(err.to_string().contains("twist exponent"), "{err}");
}

#[test]
fn shallow_table_reports_depth() {
    let fam = family(Preset::Fer, 1);
    let s = fam.sector();
    let a = s.field(Species::Fermion, Component::Ortho(1), 1).unwrap();
    let basis = Arc::new(Basis::new(s, &r(1)));
    let y = fam.free_field_family(&a).unwrap();
    let table = n2vosa::operators::TableFamily::tabulate(y.as_ref(), basis, &[r(0)]).unwrap();
    let outer = fam.iterate(&a, &q(3, 2), Arc::new(table)).unwrap();
    let big = Monomial::vacuum();
    let err = (0..4)
        .map(|k| outer.apply_mode(&r(k - 2), &big))
        .find_map(Result::err)
        .expect("some mode needs an untabulated target mode");
    assert!(matches!(err, n2vosa::Error::TooShallow(_)), "{err}");
}

#[test]
fn mirror_families_from_iterates_match_closed_forms() {
    // In the twisted sector J and G1 have no closed form on ℤ; compare the
    // residue-built G2 with its closed form instead.
    let resid = family(Preset::MirrorKappa, 1);
    let closed = family(Preset::MirrorKappa, 1).closed_forms_only();
    let basis = Basis::new(resid.sector(), &q(3, 2));
    for n in -2..=2 {
        let g = gen(Family::G2, r(n));
        let a = to_matrix(resid.op(&g).unwrap().as_ref(), &basis).unwrap();
        let b = to_matrix(closed.op(&g).unwrap().as_ref(), &basis).unwrap();
        assert_eq!(a, b, "G2({n})");
    }
}

#[test]
fn ramond_g2_from_iterates_matches_closed_form() {
    let resid = family(Preset::RamondN2, 1);
    let closed = family(Preset::RamondN2, 1).closed_forms_only();
    let basis = Basis::new(resid.sector(), &r(1));
    for n in -1..=1 {
        let g = gen(Family::G2, r(n));
        let a = to_matrix(resid.op(&g).unwrap().as_ref(), &basis).unwrap();
        let b = to_matrix(closed.op(&g).unwrap().as_ref(), &basis).unwrap();
        assert_eq!(a, b, "G2({n})");
    }
}

fn tau_pm(fam: &OperatorFamily, plus: bool) -> State {
    let f = if plus { Family::Gp } else { Family::Gm };
    fam.op(&gen(f, q(-3, 2))).unwrap().apply(&State::vacuum()).unwrap()
}

#[test]
fn kappa_is_an_involution_swapping_tau() {
    let fam = family(Preset::N2Free, 1);
    let basis = Basis::new(fam.sector(), &r(2));
    let k = vosa_automorphism(&AutomorphismKind::Kappa, fam.sector(), &basis).unwrap();
    assert_eq!(k.mul(&k), n2vosa::operators::SparseMatrix::identity(basis.len()));
    let mu = current_vector(fam.sector()).unwrap();
    assert_eq!(apply_matrix(&k, &basis, &mu).unwrap(), mu.scaled(&CycScalar::from_int(-1)));
    assert_eq!(apply_matrix(&k, &basis, &tau_pm(&fam, true)).unwrap(), tau_pm(&fam, false));
    assert_eq!(apply_matrix(&k, &basis, &tau_pm(&fam, false)).unwrap(), tau_pm(&fam, true));
    let kt = vosa_automorphism(&AutomorphismKind::KappaTilde, fam.sector(), &basis).unwrap();
    assert_eq!(apply_matrix(&kt, &basis, &mu).unwrap(), mu.scaled(&CycScalar::from_int(-1)));
}

#[test]
fn automorphisms_commute_with_l0_and_conjugate_modes() {
    let fam = family(Preset::N2Free, 1);
    let basis = Basis::new(fam.sector(), &q(5, 2));
    let mat = |s: GenSymbol| to_matrix(fam.op(&s).unwrap().as_ref(), &basis).unwrap();
    let l0 = mat(gen(Family::L, r(0)));
    let minus = CycScalar::from_int(-1);
    for kind in [AutomorphismKind::Kappa, AutomorphismKind::KappaTilde, AutomorphismKind::Parity] {
        let g = vosa_automorphism(&kind, fam.sector(), &basis).unwrap();
        assert_eq!(g.mul(&l0), l0.mul(&g), "{kind:?}");
    }
    let k = vosa_automorphism(&AutomorphismKind::Kappa, fam.sector(), &basis).unwrap();
    for n in -1..=1 {
        let j = mat(gen(Family::J, r(n)));
        assert_eq!(k.mul(&j), j.mul(&k).scaled(&minus));
        let l = mat(gen(Family::L, r(n)));
        assert_eq!(k.mul(&l), l.mul(&k));
        let rr = &r(n) + &q(1, 2);
        let gp = mat(gen(Family::Gp, rr.clone()));
        let gm = mat(gen(Family::Gm, rr));
        assert_eq!(k.mul(&gp), gm.mul(&k));
    }
}

#[test]
fn sigma_xi_scales_by_charge() {
    let fam = family(Preset::N2FreeCharged, 1);
    let basis = Basis::new(fam.sector(), &r(2));
    let xi = CycScalar::zeta(3, 1).unwrap();
    let g = vosa_automorphism(&AutomorphismKind::SigmaXi(xi.clone()), fam.sector(), &basis).unwrap();
    let j0 = fam.op(&gen(Family::J, r(0))).unwrap();
    for (i, m) in basis.monomials().iter().enumerate() {
        let charge = j0.apply_mono(m).unwrap().coefficient(m).to_rational().unwrap();
        let expect = xi.pow(charge.to_i64().unwrap()).unwrap();
        assert_eq!(g.column(i).to_vec(), vec![(i, expect)], "{m}");
    }
    assert!(vosa_automorphism(&AutomorphismKind::KappaTilde, fam.sector(), &basis).is_err());
    let twisted = family(Preset::SigmaFermion, 1);
    let tb = Basis::new(twisted.sector(), &r(1));
    assert!(vosa_automorphism(&AutomorphismKind::Parity, twisted.sector(), &tb).is_err());
}

#[test]
fn undefined_generators_are_rejected() {
    let fam = family(Preset::Bos, 1);
    assert!(fam.op(&gen(Family::J, r(0))).is_err());
    let fam = family(Preset::SigmaXi { k: 3, j: 1 }, 1);
    let err = fam.op(&gen(Family::Gp, q(1, 2))).err().unwrap();
    assert!(err.to_string().contains("Z+5/6"), "{err}");
    assert!(fam.op(&gen(Family::Gp, q(5, 6))).is_ok());
    assert!(fam.op(&gen(Family::Gm, q(1, 6))).is_ok());
}

#[test]
fn operator_tables_print() {
    let fam = family(Preset::SigmaFermion, 1);
    let text = fam.build_generator(&gen(Family::L, r(0))).unwrap().to_string();
    assert!(text.starts_with("L(0) = "), "{text}");
    assert!(text.contains("(1/16)"), "{text}");
}

#[test]
fn rotation_conjugates_kappa_into_the_swap() {
    let fam = family(Preset::N2Free, 1);
    let basis = Basis::new(fam.sector(), &q(3, 2));
    let h = CycScalar::sqrt2().scale(&q(1, 2));
    let rot = |sin: CycScalar| {
        vosa_automorphism(&AutomorphismKind::Rotation { cos: h.clone(), sin }, fam.sector(), &basis).unwrap()
    };
    let (rp, rm) = (rot(h.clone()), rot(-&h));
    assert_eq!(rp.mul(&rm), n2vosa::operators::SparseMatrix::identity(basis.len()));
    let mu = current_vector(fam.sector()).unwrap();
    assert_eq!(apply_matrix(&rp, &basis, &mu).unwrap(), mu);
    assert_eq!(apply_matrix(&rp, &basis, &tau_pm(&fam, true)).unwrap(), tau_pm(&fam, true));
    let k = vosa_automorphism(&AutomorphismKind::Kappa, fam.sector(), &basis).unwrap();
    let kt = vosa_automorphism(&AutomorphismKind::KappaTilde, fam.sector(), &basis).unwrap();
    assert_eq!(rp.mul(&k).mul(&rm), kt);
    let bad = AutomorphismKind::Rotation { cos: CycScalar::one(), sin: CycScalar::one() };
    assert!(vosa_automorphism(&bad, fam.sector(), &basis).is_err());
}
