//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! A few criteria are stated in a form the construction cannot satisfy. They
//! are still evaluated literally and reported as FAIL, next to the check that
//! does hold. The process exits nonzero if any criterion changes outcome
//! from what is listed in `KNOWN_LITERAL_FAILURES`.

use std::time::{Duration, Instant};

use n2vosa::fock::{Basis, State};
use n2vosa::operators::{
    apply_matrix, to_matrix, vosa_automorphism, AutomorphismKind, FamilyMode, OperatorFamily, Preset, SparseMatrix,
};
use n2vosa::qseries::PuiseuxSeries;
use n2vosa::scalar::{q, CycScalar, Rational};
use n2vosa::superalgebra::{homomorphism_check, jacobi_check, AlgebraMap, Family, GenSymbol, Presentation};
use n2vosa::verify::*;

/// Criteria whose literal statement fails, with the reason.
const KNOWN_LITERAL_FAILURES: [(u32, &str); 4] = [
    (2, "D(1/3) carries the (-1/3)-shifted algebra, not the 1/3-shifted one, onto the untwisted algebra"),
    (6, "G+ sits on Z+1/2+j/k, and for j/k > 1/2 the vacuum weight uses j/k - 1"),
    (8, "the sigma_xi p,q-character is p^(-j/k) times the stated product with p and 1/p exchanged"),
    (11, "kappa and kappa~ are conjugate by a rotation of the two copies, so their +1 characters agree"),
];

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn family(p: Preset, d: u32) -> OperatorFamily {
    OperatorFamily::preset(p, d).expect("preset builds")
}

fn gen(f: Family, n: Rational) -> GenSymbol {
    GenSymbol::new(f, n)
}

struct Outcome {
    passed: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, what.into()));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }
}

fn relations(o: &mut Outcome, fam: &OperatorFamily, pres: &Presentation, bound: &Rational, cutoff: &Rational, c: &Rational) {
    match check_relations(fam, pres, bound, cutoff) {
        Ok(rep) => {
            let ok = rep.passed() && rep.central_charge == CentralCharge::Consistent(c.clone());
            o.check(
                ok,
                format!(
                    "{} on {}: {} pairs, basis {}, c = {:?}, {} failures",
                    rep.suite,
                    rep.sector,
                    rep.pairs_checked,
                    rep.basis_size,
                    rep.central_charge,
                    rep.failures.len()
                ),
            );
        }
        Err(e) => o.check(false, format!("{pres} on {}: {e}", fam.sector())),
    }
}

fn vacuum_weight(fam: &OperatorFamily) -> Option<Rational> {
    let image = fam.op(&gen(Family::L, r(0))).ok()?.apply(&State::vacuum()).ok()?;
    image.coefficient(&n2vosa::fock::Monomial::vacuum()).to_rational()
}

fn q_dim(p: Preset, d: u32, order: &Rational) -> PuiseuxSeries {
    let fam = family(p, d);
    let cutoff = order + &(fam.central_charge_claim() / &r(24));
    graded_dimension(&fam, &cutoff, Variant::Dim).unwrap().q().unwrap().with_trunc(Some(order.clone()))
}

fn q_sdim(p: Preset, d: u32, order: &Rational) -> PuiseuxSeries {
    let fam = family(p, d);
    let cutoff = order + &(fam.central_charge_claim() / &r(24));
    graded_dimension(&fam, &cutoff, Variant::Sdim).unwrap().q().unwrap().with_trunc(Some(order.clone()))
}

fn compare(o: &mut Outcome, name: &str, computed: &PuiseuxSeries, closed: &PuiseuxSeries, below: &Rational) {
    let rep = compare_series(computed, closed);
    let t = rep.truncation.clone().unwrap_or_else(|| r(1000));
    let ok = rep.matched && &t >= below;
    let detail = match &rep.first_difference {
        None => format!("exact below q^{t}"),
        Some(d) => format!("differs at {d}"),
    };
    o.check(ok, format!("{name}: {detail}"));
}

fn c1_jacobi() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut pres = vec![Presentation::virasoro(), Presentation::n1_ns(), Presentation::n1_ramond()];
    for t in [r(0), q(1, 4), q(1, 3), q(1, 2)] {
        pres.push(Presentation::n2_shifted(t));
    }
    pres.push(Presentation::n2_shifted_nonhomogeneous(r(0)).unwrap());
    pres.push(Presentation::n2_shifted_nonhomogeneous(q(1, 2)).unwrap());
    pres.push(Presentation::n2_mirror());
    for p in &pres {
        let rep = jacobi_check(p, &r(3));
        o.check(rep.passed(), format!("{}: {} triples, {} failures", rep.presentation, rep.triples_checked, rep.failures.len()));
    }
    let took = start.elapsed();
    o.check(took < Duration::from_secs(10), format!("total {took:.2?} < 10s"));
    o
}

fn c2_spectral_flow() -> Outcome {
    let mut o = Outcome::new();
    let a0 = Presentation::n2_shifted(r(0));
    for t in [q(1, 3), q(1, 2), r(1)] {
        let map = AlgebraMap::SpectralFlow(t.clone());
        let literal = homomorphism_check(&map, &Presentation::n2_shifted(t.fract()), &a0, &r(3));
        o.check(
            literal.passed(),
            format!("D({t}): {} -> {}, {} pairs, {} failures", literal.source, literal.target, literal.pairs_checked, literal.failures.len()),
        );
        let from_minus = homomorphism_check(&map, &Presentation::n2_shifted(-&t), &a0, &r(3));
        let inverse = homomorphism_check(&AlgebraMap::SpectralFlow(-&t), &Presentation::n2_shifted(t.clone()), &a0, &r(3));
        o.note(format!(
            "D({t}): {} -> {} {}; D(-{t}): {} -> {} {}",
            from_minus.source,
            from_minus.target,
            if from_minus.passed() { "holds" } else { "fails" },
            inverse.source,
            inverse.target,
            if inverse.passed() { "holds" } else { "fails" },
        ));
    }
    o
}

fn c3_untwisted() -> Outcome {
    let mut o = Outcome::new();
    let b3 = r(3);
    for d in 1..=2 {
        let fam = family(Preset::Bos, d);
        relations(&mut o, &fam, &fam.presentation(), &b3, &r(4), &r(d as i64));
    }
    for d in 1..=3 {
        let fam = family(Preset::Fer, d);
        relations(&mut o, &fam, &fam.presentation(), &b3, &q(7, 2), &q(d as i64, 2));
    }
    for d in 1..=2 {
        let fam = family(Preset::N1Free, d);
        let cutoff = if d == 1 { q(7, 2) } else { r(3) };
        relations(&mut o, &fam, &fam.presentation(), &b3, &cutoff, &q(3 * d as i64, 2));
    }
    let fam = family(Preset::N2Free, 1);
    for pres in Preset::N2Free.presentations() {
        relations(&mut o, &fam, &pres, &b3, &q(7, 2), &r(3));
    }
    for (p, d) in [(Preset::Bos, 2), (Preset::Fer, 3), (Preset::N1Free, 1), (Preset::N2Free, 1)] {
        let checks = consequence_identities(&family(p, d)).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        let names: Vec<_> = checks.iter().map(|c| c.name.as_str()).collect();
        o.check(failed.is_empty(), format!("{p} d={d} vacuum identities: {}", names.join(", ")));
    }
    o
}

fn c4_sigma() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=2 {
        let fam = family(Preset::SigmaFermion, d);
        relations(&mut o, &fam, &fam.presentation(), &r(3), &r(3), &q(d as i64, 2));
        let vac = vacuum_weight(&fam);
        o.check(vac == Some(q(d as i64, 16)), format!("M_sigma d={d}: vacuum L(0) = {vac:?}, expected {}", q(d as i64, 16)));
    }
    for d in 1..=2 {
        let fam = family(Preset::RamondN1, d);
        let c = q(3 * d as i64, 2);
        relations(&mut o, &fam, &fam.presentation(), &r(3), &r(3), &c);
        let basis = Basis::new(fam.sector(), &r(3));
        let g0 = to_matrix(fam.op(&gen(Family::GN1, r(0))).unwrap().as_ref(), &basis).unwrap();
        let l0 = to_matrix(fam.op(&gen(Family::L, r(0))).unwrap().as_ref(), &basis).unwrap();
        let shift = SparseMatrix::identity(basis.len()).scaled(&CycScalar::from(&c / &r(24)));
        o.check(g0.mul(&g0) == l0.sub(&shift), format!("Ramond N=1 d={d}: G(0)^2 = L(0) - c/24 on {} states", basis.len()));
    }
    let fam = family(Preset::RamondN2, 1);
    for pres in Preset::RamondN2.presentations() {
        relations(&mut o, &fam, &pres, &r(2), &r(3), &r(3));
    }
    o
}

fn c5_mirror() -> Outcome {
    let mut o = Outcome::new();
    let fam = family(Preset::MirrorKappa, 1);
    relations(&mut o, &fam, &fam.presentation(), &r(3), &q(5, 2), &r(3));
    for (f, on, off, coset) in [
        (Family::J, q(1, 2), r(0), "Z+1/2"),
        (Family::G1, q(-1, 2), r(0), "Z+1/2"),
        (Family::G2, r(0), q(1, 2), "Z"),
        (Family::L, r(0), q(1, 2), "Z"),
    ] {
        let ok = fam.op(&gen(f, on.clone())).is_ok() && fam.op(&gen(f, off.clone())).is_err();
        o.check(ok, format!("{}: defined at {on}, rejected at {off} (support {coset})", f.name()));
    }
    // J, G1, G2 of this family are built by the iterate formula; check G2
    // against its closed form as an independent oracle.
    let closed = family(Preset::MirrorKappa, 1).closed_forms_only();
    let basis = Basis::new(fam.sector(), &q(3, 2));
    let same = (-2..=2).all(|n| {
        let g = gen(Family::G2, r(n));
        to_matrix(fam.op(&g).unwrap().as_ref(), &basis).unwrap()
            == to_matrix(closed.op(&g).unwrap().as_ref(), &basis).unwrap()
    });
    o.check(same, "G2(n) from the iterate formula equals its closed form for |n| <= 2");
    o
}

fn c6_sigma_xi() -> Outcome {
    let mut o = Outcome::new();
    for j in 1..=2 {
        let p = Preset::SigmaXi { k: 3, j };
        let fam = family(p, 1);
        relations(&mut o, &fam, &fam.presentation(), &r(2), &r(3), &r(3));
        let theta = q(j, 3);
        let half = q(1, 2);
        // Literal supports: G+ on Z+1/2-j/k, G- on Z+1/2+j/k.
        let lit_plus = &half - &theta;
        let lit_minus = &half + &theta;
        let literal = fam.op(&gen(Family::Gp, lit_plus.clone())).is_ok() && fam.op(&gen(Family::Gm, lit_minus.clone())).is_ok();
        o.check(literal, format!("j={j}: G+ defined on Z+{}, G- on Z+{}", lit_plus.fract(), lit_minus.fract()));
        let plus = (&half + &theta).fract();
        let minus = (&half - &theta).fract();
        let held = fam.op(&gen(Family::Gp, plus.clone())).is_ok()
            && fam.op(&gen(Family::Gm, minus.clone())).is_ok()
            && fam.op(&gen(Family::Gp, minus.clone())).is_err();
        o.note(format!("j={j}: observed G+ on Z+{plus}, G- on Z+{minus}: {}", if held { "holds" } else { "fails" }));
        let vac = vacuum_weight(&fam);
        let want = q(j * j, 18);
        o.check(vac.as_ref() == Some(&want), format!("j={j}: vacuum L(0) = {vac:?}, expected {want}"));
    }
    o
}

fn c7_characters() -> Outcome {
    let mut o = Outcome::new();
    let order = q(13, 2);
    let below = r(6);
    let cases: Vec<(&str, Preset, u32, ClosedForm)> = vec![
        ("V_bos", Preset::Bos, 1, ClosedForm::EtaInverse),
        ("V_bos", Preset::Bos, 2, ClosedForm::EtaInverse),
        ("V_fer", Preset::Fer, 1, ClosedForm::WeberF),
        ("V_fer", Preset::Fer, 2, ClosedForm::WeberF),
        ("M_sigma", Preset::SigmaFermion, 1, ClosedForm::WeberF2),
        ("M_sigma", Preset::SigmaFermion, 2, ClosedForm::WeberF2),
        ("V_bos x M_sigma", Preset::RamondN1, 1, ClosedForm::F2OverEta),
        ("V_bos x M_sigma", Preset::RamondN1, 2, ClosedForm::F2OverEta),
        ("M_kappa", Preset::KappaBoson, 1, ClosedForm::Kappa),
        ("M_kappa", Preset::KappaBoson, 2, ClosedForm::Kappa),
        ("V x M_kappa x M_sigma", Preset::MirrorKappa, 1, ClosedForm::Mirror),
        ("sigma_xi j/k=1/3", Preset::SigmaXi { k: 3, j: 1 }, 1, ClosedForm::SigmaXi { k: 3, j: 1 }),
        ("sigma_xi j/k=2/3", Preset::SigmaXi { k: 3, j: 2 }, 1, ClosedForm::SigmaXi { k: 3, j: 2 }),
    ];
    for (name, p, d, form) in cases {
        let computed = q_dim(p, d, &order);
        let closed = closed_form(form, d, &order).unwrap();
        compare(&mut o, &format!("dim {name} d={d} vs {form:?}"), &computed, &closed, &below);
    }
    for d in 1..=2 {
        let computed = q_sdim(Preset::Fer, d, &order);
        let closed = closed_form(ClosedForm::WeberF1, d, &order).unwrap();
        compare(&mut o, &format!("sdim V_fer d={d} vs WeberF1"), &computed, &closed, &below);
    }
    for (name, rep) in weber_identities(&r(12)).unwrap() {
        let t = rep.truncation.clone().unwrap_or_else(|| r(1000));
        o.check(rep.matched && t >= r(12), format!("{name}: exact below q^{t}"));
    }
    o
}

fn c8_pq() -> Outcome {
    let mut o = Outcome::new();
    let order = q(9, 2);
    let pq = |p: Preset| match graded_dimension(&family(p, 1), &(&order + &q(1, 8)), Variant::Pq { p_bound: 4 }).unwrap() {
        GradedDimension::Pq { series, p_shift } => (series.with_trunc(Some(order.clone())), p_shift),
        GradedDimension::Q(_) => unreachable!(),
    };
    let (free, shift) = pq(Preset::N2FreeCharged);
    let closed = pq_closed_form(PqClosedForm::FreePair, 1, &order, 4).unwrap();
    let rep = compare_biseries(&free, &closed);
    o.check(
        rep.matched && shift.is_zero(),
        format!(
            "V x V: {} below q^{}, J(0) vacuum charge {shift}",
            if rep.matched { "exact" } else { "differs" },
            rep.truncation.clone().unwrap_or_else(|| r(1000))
        ),
    );
    let (sx, shift) = pq(Preset::SigmaXi { k: 3, j: 1 });
    let closed = pq_closed_form(PqClosedForm::SigmaXi { k: 3, j: 1 }, 1, &order, 4).unwrap();
    let literal = compare_biseries(&sx, &closed);
    o.check(
        literal.matched && shift.is_zero(),
        format!(
            "sigma_xi j/k=1/3: J(0) vacuum charge {shift}, first difference {}",
            literal.first_difference.clone().unwrap_or_else(|| "none".into())
        ),
    );
    let swapped = compare_biseries(&sx, &closed.invert_p());
    o.note(format!(
        "sigma_xi j/k=1/3 with p -> 1/p and prefactor p^{shift}: {}",
        if swapped.matched && shift == q(-1, 3) { "exact" } else { "differs" }
    ));
    o
}

fn c9_substitution() -> Outcome {
    let mut o = Outcome::new();
    let lhs = q_dim(Preset::RamondN1, 1, &q(7, 2));
    let mirror = q_dim(Preset::MirrorKappa, 1, &q(7, 4));
    let rhs = mirror.substitute(&r(2)).unwrap();
    compare(&mut o, "dim V_bos x M_sigma = (dim V x M_kappa x M_sigma)(q^2)", &lhs, &rhs, &r(3));
    o
}

fn c10_recursion() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=2 {
        let fam = family(Preset::SigmaFermion, d);
        let basis = Basis::new(fam.sector(), &r(2));
        let omega = fam.fermion_conformal_family(1).unwrap();
        for n in -2..=2 {
            let rebuilt = to_matrix(&FamilyMode::new(omega.clone(), r(n + 1)).unwrap(), &basis).unwrap();
            let closed = to_matrix(&fam.build_generator(&gen(Family::L, r(n))).unwrap(), &basis).unwrap();
            o.check(rebuilt == closed, format!("d={d}: L(sigma)({n}) on {} states, {} nonzero entries", basis.len(), closed.nnz()));
        }
    }
    o
}

fn c11_two_mirrors() -> Outcome {
    let mut o = Outcome::new();
    let fam = family(Preset::N2Free, 1);
    let basis = Basis::new(fam.sector(), &r(2));
    let l0 = to_matrix(fam.op(&gen(Family::L, r(0))).unwrap().as_ref(), &basis).unwrap();
    let mu = current_vector(fam.sector()).unwrap();
    let tau = |f: Family| fam.op(&gen(f, q(-3, 2))).unwrap().apply(&State::vacuum()).unwrap();
    let (tp, tm) = (tau(Family::Gp), tau(Family::Gm));
    let minus = CycScalar::from_int(-1);
    let mut plus_spaces = Vec::new();
    let mut mats = Vec::new();
    for (name, kind) in [("kappa", AutomorphismKind::Kappa), ("kappa~", AutomorphismKind::KappaTilde)] {
        let m = vosa_automorphism(&kind, fam.sector(), &basis).unwrap();
        let ok = m.mul(&m) == SparseMatrix::identity(basis.len())
            && m.mul(&l0) == l0.mul(&m)
            && apply_matrix(&m, &basis, &mu).unwrap() == mu.scaled(&minus)
            && apply_matrix(&m, &basis, &tp).unwrap() == tm
            && apply_matrix(&m, &basis, &tm).unwrap() == tp;
        o.check(ok, format!("{name}: order 2, weight preserving, mu -> -mu, tau+ <-> tau-"));
        let spaces = fixed_subspace_dims(&m, &basis, fam.sector()).unwrap();
        let plus = spaces.into_iter().find(|s| s.exponent == 0).unwrap().series;
        o.note(format!("{name} +1 eigenspace: {plus}"));
        plus_spaces.push(plus);
        mats.push(m);
    }
    let h = CycScalar::sqrt2().scale(&q(1, 2));
    let rot = |sin: CycScalar| {
        vosa_automorphism(&AutomorphismKind::Rotation { cos: h.clone(), sin }, fam.sector(), &basis).unwrap()
    };
    let (rp, rm) = (rot(h.clone()), rot(-&h));
    let conjugate = rp.mul(&mats[0]).mul(&rm) == mats[1];
    let fixes = [&mu, &tp, &tm].iter().all(|v| apply_matrix(&rp, &basis, v).unwrap() == **v) && rp.mul(&l0) == l0.mul(&rp);
    o.note(format!(
        "R = rotation of the two copies by pi/4 fixes mu, tau+, tau-, commutes with L(0): {}; R kappa R^-1 = kappa~: {}",
        if fixes { "holds" } else { "fails" },
        if conjugate { "holds" } else { "fails" }
    ));
    let diff = plus_spaces[0].first_difference(&plus_spaces[1]);
    o.check(
        diff.is_some(),
        match &diff {
            Some((e, a, b)) => format!("+1 characters differ at q^{e}: {a} vs {b}"),
            None => "+1 eigenspace characters agree through weight 2".into(),
        },
    );
    o
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "Jacobi identity of every presentation", c1_jacobi),
        (2, "spectral flow D(t) into the untwisted algebra", c2_spectral_flow),
        (3, "untwisted sectors: relations, central charges, vacuum identities", c3_untwisted),
        (4, "sigma-twisted sectors", c4_sigma),
        (5, "kappa-twisted sector: mirror-twisted N=2", c5_mirror),
        (6, "sigma_xi-twisted sectors: shifted N=2", c6_sigma_xi),
        (7, "characters against closed forms; Weber identities", c7_characters),
        (8, "p,q-characters", c8_pq),
        (9, "q -> q^2 substitution identity", c9_substitution),
        (10, "iterate-formula reconstruction of L(sigma)", c10_recursion),
        (11, "two mirror maps: eigenspace witness", c11_two_mirrors),
    ];
    let total = Instant::now();
    let mut results = Vec::new();
    let mut slowest = Duration::ZERO;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        slowest = slowest.max(took);
        println!("{} {id:>2}. {name} ({took:.2?})", if outcome.passed { "PASS" } else { "FAIL" });
        for line in &outcome.lines {
            println!("        {line}");
        }
        results.push((id, outcome.passed));
    }
    let elapsed = total.elapsed();
    let perf = slowest < Duration::from_secs(60) && elapsed < Duration::from_secs(600);
    println!("{} 12. performance: slowest criterion {slowest:.2?}, total {elapsed:.2?}", if perf { "PASS" } else { "FAIL" });
    results.push((12, perf));

    let mut unexpected = Vec::new();
    for (id, passed) in &results {
        let known = KNOWN_LITERAL_FAILURES.iter().find(|(k, _)| k == id);
        match (passed, known) {
            (true, None) | (false, Some(_)) => {}
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} now passes; update KNOWN_LITERAL_FAILURES")),
        }
    }
    let failed = results.iter().filter(|(_, p)| !p).count();
    println!("\n{} of {} criteria pass.", results.len() - failed, results.len());
    for (id, why) in KNOWN_LITERAL_FAILURES {
        println!("  criterion {id} fails as stated: {why}");
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        std::process::exit(1);
    }
}
