use n2vosa::qseries::{
    eta_series, series_op, substitute, theta_series, weber_series, PuiseuxSeries, SeriesOp, Weber,
};
use n2vosa::scalar::{q, CycScalar, Rational};

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

// Partitions counted by brute force over nonincreasing part sequences.
fn partitions(n: i64, max: i64) -> i64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
}

#[test]
fn partition_generating_function() {
    let euler = eta_series(&r(1), &r(12)).unwrap().shift(&q(-1, 24));
    let inv = series_op(&euler, &euler, SeriesOp::Reciprocal).unwrap();
    for n in 0..11 {
        assert_eq!(inv.coefficient(&r(n)), CycScalar::from_int(partitions(n, n)), "p({n})");
    }
}

#[test]
fn eta_expansion_matches_finite_product() {
    // ∏_{n ≤ 8}(1 − qⁿ) expanded by hand-rolled integer convolution.
    let mut poly = [0i64; 9];
    poly[0] = 1;
    for n in 1..=8usize {
        for k in (n..9).rev() {
            poly[k] -= poly[k - n];
        }
    }
    let eta = eta_series(&r(1), &r(8)).unwrap();
    for (k, c) in poly.iter().enumerate().take(8) {
        let e = &r(k as i64) + &q(1, 24);
        assert_eq!(eta.coefficient(&e), CycScalar::from_int(*c));
    }
    assert_eq!(eta_series(&r(2), &r(3)).unwrap().valuation(), Some(q(1, 12)));
    assert!(eta_series(&r(0), &r(3)).is_err());
}

#[test]
fn half_powers() {
    let h = PuiseuxSeries::monomial(CycScalar::one(), &q(1, 2), None);
    assert_eq!(h.mul(&h), PuiseuxSeries::monomial(CycScalar::one(), &r(1), None));
    let geo = PuiseuxSeries::from_terms((0..10).map(|k| (r(k), CycScalar::one())), Some(r(10)));
    let one_minus = PuiseuxSeries::from_terms([(r(0), CycScalar::one()), (r(1), CycScalar::from_int(-1))], None);
    assert!(geo.mul(&one_minus).agrees_with(&PuiseuxSeries::one(None)));
}

#[test]
fn weber_identities() {
    let t = r(12);
    let f = weber_series(Weber::F, &r(13)).unwrap();
    let f1 = weber_series(Weber::F1, &r(13)).unwrap();
    let f2 = weber_series(Weber::F2, &r(13)).unwrap();
    let prod = f.mul(&f1).mul(&f2);
    assert!(prod.agrees_with(&PuiseuxSeries::constant(CycScalar::sqrt2(), None)));
    assert!(prod.trunc().unwrap() >= &t);

    let wide = r(15);
    let eta = eta_series(&r(1), &wide).unwrap();
    let eta2 = eta_series(&r(2), &wide).unwrap();
    let etah = eta_series(&q(1, 2), &wide).unwrap();
    let rhs = eta.mul(&eta).mul(&eta2.reciprocal().unwrap()).mul(&etah.reciprocal().unwrap());
    assert!(f.agrees_with(&rhs));
    assert!(rhs.trunc().unwrap() >= &t);
    assert!(f1.agrees_with(&etah.mul(&eta.reciprocal().unwrap())));
    assert!(f2.agrees_with(&eta2.mul(&eta.reciprocal().unwrap()).scale(&CycScalar::sqrt2())));
}

#[test]
fn theta_series_small_lattices() {
    assert!(theta_series(&[], &r(3)).unwrap().agrees_with(&PuiseuxSeries::one(None)));
    let a1 = theta_series(&[vec![2]], &r(10)).unwrap();
    let z = theta_series(&[vec![1]], &r(10)).unwrap();
    for t in 0..20i64 {
        let e = q(t, 2);
        let count_a1 = (-10i64..=10).filter(|n| n * n == t).count() as i64;
        let count_z = (-10i64..=10).filter(|n| n * n == t).count() as i64;
        if e < r(10) {
            assert_eq!(z.coefficient(&e), CycScalar::from_int(count_z));
        }
        if r(t) < r(10) {
            assert_eq!(a1.coefficient(&r(t)), CycScalar::from_int(count_a1));
        }
    }
    assert!(theta_series(&[vec![1, 2], vec![2, 1]], &r(3)).is_err());
    // A2: 1 + 6q + 0q² + 6q³ + 6q⁴
    let a2 = theta_series(&[vec![2, -1], vec![-1, 2]], &r(5)).unwrap();
    let want = [1, 6, 0, 6, 6];
    for (k, c) in want.iter().enumerate() {
        assert_eq!(a2.coefficient(&r(k as i64)), CycScalar::from_int(*c));
    }
}

#[test]
fn substitution_and_reciprocal_roundtrip() {
    let eta = eta_series(&r(1), &r(6)).unwrap();
    assert_eq!(substitute(&eta, &r(1)).unwrap(), eta);
    assert!(substitute(&eta, &r(2)).unwrap().agrees_with(&eta_series(&r(2), &r(12)).unwrap()));
    let back = eta.reciprocal().unwrap().reciprocal().unwrap();
    assert!(back.agrees_with(&eta));
    assert!(PuiseuxSeries::zero(Some(r(2))).reciprocal().is_err());
}
