use n2vosa::fock::*;
use n2vosa::scalar::{q, CycScalar, Rational};

fn counts_by_weight(basis: &[Monomial], den: i64, max: i64) -> Vec<usize> {
    let mut v = vec![0; (max + 1) as usize];
    for m in basis {
        let w = &weight_of(m) * &Rational::from_int(den);
        v[w.to_i64().unwrap() as usize] += 1;
    }
    v
}

// Coefficients of ∏ (1 + x^part) or 1/∏ (1 − x^part) for parts in `parts`.
fn product_counts(parts: &[i64], distinct: bool, max: i64) -> Vec<usize> {
    let mut c = vec![0usize; (max + 1) as usize];
    c[0] = 1;
    for &p in parts {
        if distinct {
            for w in (p..=max).rev() {
                c[w as usize] += c[(w - p) as usize];
            }
        } else {
            for w in p..=max {
                c[w as usize] += c[(w - p) as usize];
            }
        }
    }
    c
}

fn power(c: &[usize], k: u32) -> Vec<usize> {
    let mut acc = vec![0usize; c.len()];
    acc[0] = 1;
    for _ in 0..k {
        let mut next = vec![0usize; c.len()];
        for i in 0..c.len() {
            for j in 0..c.len() - i {
                next[i + j] += acc[i] * c[j];
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn boson_basis_examples() {
    let b = enumerate_basis(&SectorSpec::bos(1), &q(2, 1)).unwrap();
    assert_eq!(b.len(), 4);
    let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
    assert_eq!(shown, ["|0>", "a1(-1) |0>", "a1(-2) |0>", "a1(-1)^2 |0>"]);
}

#[test]
fn fermion_basis_examples() {
    let b = enumerate_basis(&SectorSpec::fer(1), &q(3, 2)).unwrap();
    let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
    assert_eq!(shown, ["|0>", "a1(-1/2) |0>", "a1(-3/2) |0>"]);
}

#[test]
fn sigma_weight_zero_stratum() {
    let b = enumerate_basis(&SectorSpec::sigma_fermion(2), &Rational::zero()).unwrap();
    let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
    assert_eq!(shown, ["|0>", "a1+(0) |0>"]);
    let odd = enumerate_basis(&SectorSpec::sigma_fermion(3), &Rational::zero()).unwrap();
    assert_eq!(odd.len(), 4);
}

#[test]
fn counts_match_partition_oracles() {
    let max = 12;
    for d in 1..=3u32 {
        // integer parts, unrestricted multiplicity
        let bos = product_counts(&(1..=max).collect::<Vec<_>>(), false, max);
        let b = enumerate_basis(&SectorSpec::bos(d), &Rational::from_int(max)).unwrap();
        assert_eq!(counts_by_weight(&b, 1, max), power(&bos, d));

        // half-odd parts, distinct: measure in units of 1/2
        let fer = product_counts(&(0..max).map(|n| 2 * n + 1).collect::<Vec<_>>(), true, 2 * max);
        let f = enumerate_basis(&SectorSpec::fer(d), &Rational::from_int(max)).unwrap();
        assert_eq!(counts_by_weight(&f, 2, 2 * max), power(&fer, d));

        // κ-twisted boson: half-odd parts, unrestricted
        let kap = product_counts(&(0..max).map(|n| 2 * n + 1).collect::<Vec<_>>(), false, 2 * max);
        let k = enumerate_basis(&SectorSpec::kappa_boson(d), &Rational::from_int(max)).unwrap();
        assert_eq!(counts_by_weight(&k, 2, 2 * max), power(&kap, d));

        // σ-twisted fermion: 2^{⌈d/2⌉} ground states, then distinct integer parts
        let sig = product_counts(&(1..=max).collect::<Vec<_>>(), true, max);
        let s = enumerate_basis(&SectorSpec::sigma_fermion(d), &Rational::from_int(max)).unwrap();
        let expected: Vec<usize> = power(&sig, d).iter().map(|c| c << d.div_ceil(2)).collect();
        assert_eq!(counts_by_weight(&s, 1, max), expected);
    }
}

#[test]
fn charged_fermion_supports() {
    let spec = SectorSpec::sigma_xi(1, 3, 1);
    let sector = Sector::new(spec).unwrap();
    let plus = BaseMode { slot: 2, charge: Charge::Plus, flavor: 1 };
    let minus = BaseMode { slot: 2, charge: Charge::Minus, flavor: 1 };
    assert_eq!(sector.support(&plus), q(5, 6));
    assert_eq!(sector.support(&minus), q(1, 6));
    let err = sector.apply_mode(&plus, &q(1, 2), &State::vacuum()).unwrap_err();
    assert!(err.to_string().contains("Z+5/6"), "{err}");
    assert!(Sector::new(SectorSpec::sigma_xi(1, 2, 1)).is_err());
}

#[test]
fn mode_action_examples() {
    let bos = Sector::new(SectorSpec::bos(1)).unwrap();
    let a = BaseMode { slot: 0, charge: Charge::Plain, flavor: 1 };
    let one = bos.apply_mode(&a, &q(-1, 1), &State::vacuum()).unwrap();
    assert_eq!(bos.apply_mode(&a, &q(1, 1), &one).unwrap(), State::vacuum());
    assert!(bos.apply_mode(&a, &q(0, 1), &one).unwrap().is_zero());

    let fer = Sector::new(SectorSpec::fer(1)).unwrap();
    let psi = fer.apply_mode(&a, &q(-1, 2), &State::vacuum()).unwrap();
    assert!(fer.apply_mode(&a, &q(-1, 2), &psi).unwrap().is_zero());
    assert!(fer.apply_mode(&a, &q(0, 1), &psi).is_err());

    let sig = Sector::new(SectorSpec::sigma_fermion(2)).unwrap();
    let bp = BaseMode { slot: 0, charge: Charge::Plus, flavor: 1 };
    let bm = BaseMode { slot: 0, charge: Charge::Minus, flavor: 1 };
    let s = sig.apply_mode(&bp, &Rational::zero(), &State::vacuum()).unwrap();
    assert_eq!(sig.apply_mode(&bm, &Rational::zero(), &s).unwrap(), State::vacuum());
    assert!(sig.apply_mode(&bm, &Rational::zero(), &State::vacuum()).unwrap().is_zero());

    let odd = Sector::new(SectorSpec::sigma_fermion(1)).unwrap();
    let e = BaseMode { slot: 0, charge: Charge::Epsilon, flavor: 1 };
    let v = odd.apply_mode(&e, &Rational::zero(), &State::vacuum()).unwrap();
    assert!(!v.is_zero());
    assert_eq!(odd.apply_mode(&e, &Rational::zero(), &v).unwrap(), State::vacuum());
}

fn all_modes(sector: &Sector) -> Vec<BaseMode> {
    let mut out = Vec::new();
    let d = sector.d() as u8;
    for slot in 0..sector.slot_count() as u8 {
        for charge in [Charge::Plain, Charge::Plus, Charge::Minus, Charge::Epsilon] {
            for flavor in 1..=d {
                let b = BaseMode { slot, charge, flavor };
                if sector.apply_mode(&b, &sector.support(&b), &State::vacuum()).is_ok() {
                    out.push(b);
                }
            }
        }
    }
    out
}

// The affinization pairing computed independently of the implementation:
// ⟨x, y⟩ in the basis of each slot, times the index for bosons.
fn pairing(sector: &Sector, x: &BaseMode, m: &Rational, y: &BaseMode, n: &Rational) -> Rational {
    if x.slot != y.slot || x.flavor != y.flavor || !(m + n).is_zero() {
        return Rational::zero();
    }
    let form = match (x.charge, y.charge) {
        (Charge::Plain, Charge::Plain) => 1,
        (Charge::Plus, Charge::Minus) | (Charge::Minus, Charge::Plus) => 1,
        (Charge::Epsilon, Charge::Epsilon) => 2,
        _ => 0,
    };
    let f = Rational::from_int(form);
    if sector.is_fermionic_slot(x.slot) {
        f
    } else {
        &f * m
    }
}

#[test]
fn modes_realize_the_affinization() {
    let specs = [
        SectorSpec::n1_free(1),
        SectorSpec::ramond_n1(2),
        SectorSpec::sigma_fermion(3),
        SectorSpec::mirror_kappa(1),
        SectorSpec::sigma_xi(1, 3, 1),
        SectorSpec::sigma_xi(2, 4, 1),
        SectorSpec { d: 1, slots: vec![SlotSpec { species: Species::Boson, twist: Twist::Untwisted, flavor_basis: FlavorBasis::Charged, copy: 0 }] },
    ];
    for spec in specs {
        let sector = Sector::new(spec).unwrap();
        let basis = sector.enumerate_basis(&q(2, 1));
        let modes = all_modes(&sector);
        for x in &modes {
            for y in &modes {
                for a in -2..=2 {
                    for b in -2..=2 {
                        let m = &sector.support(x) + &Rational::from_int(a);
                        let n = &sector.support(y) + &Rational::from_int(b);
                        let odd = sector.is_fermionic_slot(x.slot) && sector.is_fermionic_slot(y.slot);
                        let sign = CycScalar::from_int(if odd { -1 } else { 1 });
                        let expected = pairing(&sector, x, &m, y, &n);
                        for w in &basis {
                            let s = State::monomial(w.clone());
                            let xy = sector.apply_mode(x, &m, &sector.apply_mode(y, &n, &s).unwrap()).unwrap();
                            let yx = sector.apply_mode(y, &n, &sector.apply_mode(x, &m, &s).unwrap()).unwrap();
                            let mut lhs = xy;
                            lhs.add_scaled(&yx, &-&sign);
                            assert_eq!(lhs, s.scaled(&CycScalar::from(expected.clone())), "{x:?}({m}) {y:?}({n}) on {w}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fermionic_reordering_signs() {
    let sector = Sector::new(SectorSpec::fer(2)).unwrap();
    let a1 = BaseMode { slot: 0, charge: Charge::Plain, flavor: 1 };
    let a2 = BaseMode { slot: 0, charge: Charge::Plain, flavor: 2 };
    let h = q(-1, 2);
    let v = State::vacuum();
    let s12 = sector.apply_mode(&a1, &h, &sector.apply_mode(&a2, &h, &v).unwrap()).unwrap();
    let s21 = sector.apply_mode(&a2, &h, &sector.apply_mode(&a1, &h, &v).unwrap()).unwrap();
    assert_eq!(s12, s21.scaled(&CycScalar::from_int(-1)));
}

#[test]
fn weights_and_json() {
    assert_eq!(weight_of(&Monomial::vacuum()), Rational::zero());
    let sector = Sector::new(SectorSpec::n1_free(1)).unwrap();
    let a = BaseMode { slot: 0, charge: Charge::Plain, flavor: 1 };
    let f = BaseMode { slot: 1, charge: Charge::Plain, flavor: 1 };
    let s = sector.apply_mode(&f, &q(-1, 2), &State::vacuum()).unwrap();
    let s = sector.apply_mode(&a, &q(-1, 1), &s).unwrap();
    let (m, _) = s.iter().next().unwrap();
    assert_eq!(weight_of(m), q(3, 2));
    assert_eq!(m.to_string(), "a1(-1) a1[1](-1/2) |0>");

    let spec = SectorSpec::mirror_kappa(2);
    assert_eq!(SectorSpec::from_json(&spec.to_json()).unwrap(), spec);
    let text = r#"{"d": 1, "slots": [{"species": "fermion", "twist": {"sigma_xi": {"j": 1, "k": 3}}, "flavor_basis": "charged", "copy": 0}]}"#;
    let parsed = SectorSpec::from_json(text).unwrap();
    assert!(Sector::new(parsed).is_ok());
}
