use crate::scalar::{CycScalar, Rational};
use crate::Error;

use super::PuiseuxSeries;

fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let t = &a[col][k] * &f;
                    a[r][k] -= &t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det = &det * &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..n {
                    let t = &a[col][k] * &f;
                    a[r][k] -= &t;
                }
            }
        }
    }
    det
}

/// Largest integer b with b² ≤ x (x ≥ 0).
fn isqrt_floor(x: &Rational) -> i64 {
    let mut b = x.floor().to_i64().unwrap_or(i64::MAX).min(1 << 31);
    let mut lo = 0i64;
    while lo < b {
        let mid = (lo + b + 1) / 2;
        if &Rational::from_int(mid * mid) <= x {
            lo = mid;
        } else {
            b = mid - 1;
        }
    }
    lo
}

/// Θ(L) = Σ_{v ∈ L} q^{⟨v,v⟩/2}, exact below `order`.
pub fn theta_series(gram: &[Vec<i64>], order: &Rational) -> Result<PuiseuxSeries, Error> {
    if !order.is_positive() {
        return Err(Error::Invalid(format!("series order must be positive, got {order}")));
    }
    let n = gram.len();
    if gram.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("gram matrix must be square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::Invalid("gram matrix must be symmetric".into()));
            }
        }
    }
    let g: Vec<Vec<Rational>> =
        gram.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
    for k in 1..=n {
        let minor: Vec<Vec<Rational>> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        if !determinant(&minor).is_positive() {
            return Err(Error::Invalid("gram matrix is not positive definite".into()));
        }
    }
    let t = Some(order.clone());
    let mut out = PuiseuxSeries::zero(t.clone());
    if n == 0 {
        return Ok(PuiseuxSeries::one(t));
    }
    let ginv = inverse(&g).expect("positive definite matrix is invertible");
    // v_i² ≤ ⟨v,v⟩ (G⁻¹)_ii < 2T (G⁻¹)_ii
    let two_t = order * &Rational::from_int(2);
    let bounds: Vec<i64> = (0..n).map(|i| isqrt_floor(&(&two_t * &ginv[i][i]))).collect();
    let mut v = vec![0i64; n];
    let mut counts: std::collections::BTreeMap<i64, i64> = Default::default();
    fn rec(
        i: usize,
        v: &mut Vec<i64>,
        bounds: &[i64],
        gram: &[Vec<i64>],
        counts: &mut std::collections::BTreeMap<i64, i64>,
    ) {
        if i == v.len() {
            let mut norm = 0i64;
            for a in 0..v.len() {
                for b in 0..v.len() {
                    norm += v[a] * gram[a][b] * v[b];
                }
            }
            *counts.entry(norm).or_default() += 1;
            return;
        }
        for x in -bounds[i]..=bounds[i] {
            v[i] = x;
            rec(i + 1, v, bounds, gram, counts);
        }
    }
    rec(0, &mut v, &bounds, gram, &mut counts);
    for (norm, c) in counts {
        out.add_term(&Rational::new(norm, 2), CycScalar::from_int(c));
    }
    Ok(out)
}
