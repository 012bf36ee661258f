use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::Rational;
use crate::Error;

/// Arithmetic data for ℚ(ζ_n): φ(n) and the reductions of x^e, 0 ≤ e < n,
/// modulo the n-th cyclotomic polynomial.
struct FieldData {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cyclotomic(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1, low degree first
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = poly_cyclotomic(d, memo);
            num = poly_exact_div(&num, &den);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qlen = rem.len() - dd;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = registry().read().unwrap().get(&n) {
        return f.clone();
    }
    let phi_poly = poly_cyclotomic(n, &mut HashMap::new());
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    let data = Arc::new(FieldData { phi, powers });
    registry().write().unwrap().entry(n).or_insert(data).clone()
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    field(n).phi
}

/// Exact element of ℚ(ζ_n) in the power basis 1, ζ_n, …, ζ_n^{φ(n)−1}.
///
/// Elements whose value is rational are always stored at conductor 1.
#[derive(Clone)]
pub struct CycScalar {
    n: u32,
    c: Vec<Rational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { n: 1, c: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        CycScalar { n: 1, c: vec![Rational::one()] }
    }

    pub fn from_rational(q: Rational) -> Self {
        CycScalar { n: 1, c: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_int(k))
    }

    /// Builds an element from power-basis coefficients at conductor `n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidConductor(0));
        }
        let phi = field(n).phi;
        if coeffs.len() != phi {
            return Err(Error::Invalid(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycScalar { n, c: coeffs }.normalized())
    }

    /// ζ_n^k.
    pub fn zeta(n: u32, k: i64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidConductor(0));
        }
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let c = f.powers[e].iter().map(|&v| Rational::from_int(v)).collect();
        Ok(CycScalar { n, c }.normalized())
    }

    pub fn i() -> Self {
        Self::zeta(4, 1).unwrap()
    }

    /// √2 = ζ_8 + ζ_8^7.
    pub fn sqrt2() -> Self {
        Self::zeta(8, 1).unwrap() + Self::zeta(8, 7).unwrap()
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    fn normalized(mut self) -> Self {
        if self.n > 1 && self.c[1..].iter().all(Rational::is_zero) {
            let c0 = std::mem::take(&mut self.c[0]);
            return CycScalar { n: 1, c: vec![c0] };
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.c[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c[0].is_one()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (self.n == 1).then(|| self.c[0].clone())
    }

    /// Re-expresses `self` in ℚ(ζ_m); requires `conductor | m`.
    pub fn embed(&self, m: u32) -> Result<Self, Error> {
        if m == 0 || !m.is_multiple_of(self.n) {
            return Err(Error::InvalidConductor(m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        Ok(self.embed_raw(m))
    }

    fn embed_raw(&self, m: u32) -> Self {
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[i * step]) {
                if p != 0 {
                    *o += &(ci * &Rational::from_int(p));
                }
            }
        }
        CycScalar { n: m, c: out }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = (a.n).lcm(&b.n);
        let ea = if a.n == m { a.clone() } else { a.embed_raw(m) };
        let eb = if b.n == m { b.clone() } else { b.embed_raw(m) };
        (ea, eb)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycScalar { n: self.n, c: self.c.iter().map(|x| x * q).collect() }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.n == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.n == 1 {
            return self.scale(&rhs.c[0]);
        }
        let (a, b) = Self::common(self, rhs);
        let f = field(a.n);
        let phi = f.phi;
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, ai) in a.c.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    prod[i + j] += &(ai * bj);
                }
            }
        }
        let mut out: Vec<Rational> = prod[..phi].to_vec();
        let n = a.n as usize;
        for (e, v) in prod.iter().enumerate().skip(phi) {
            if v.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[e % n]) {
                if p != 0 {
                    *o += &(v * &Rational::from_int(p));
                }
            }
        }
        CycScalar { n: a.n, c: out }.normalized()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.n == rhs.n {
            let c = self.c.iter().zip(&rhs.c).map(|(x, y)| x + y).collect();
            return CycScalar { n: self.n, c }.normalized();
        }
        if rhs.n == 1 {
            let mut c = self.c.clone();
            c[0] += &rhs.c[0];
            return CycScalar { n: self.n, c };
        }
        if self.n == 1 {
            return rhs.add_ref(self);
        }
        let (a, b) = Self::common(self, rhs);
        a.add_ref(&b)
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(Self::from_rational(self.c[0].recip()?));
        }
        // Solve (multiplication-by-self) · x = e_0 over ℚ.
        let phi = self.c.len();
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let basis = Self::zeta(self.n, j as i64)?.embed(self.n)?;
            let full = self.mul_ref(&basis).embed(self.n)?;
            cols.push(full.c);
        }
        let mut m: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].recip()?;
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for k in col..=phi {
                        let t = &m[col][k] * &factor;
                        m[r][k] -= &t;
                    }
                }
            }
        }
        let c = m.into_iter().map(|mut row| row.pop().unwrap()).collect();
        Ok(CycScalar { n: self.n, c }.normalized())
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Smallest m ≤ `limit` with self^m = 1.
    pub fn multiplicative_order(&self, limit: u32) -> Option<u32> {
        let mut acc = self.clone();
        for m in 1..=limit {
            if acc.is_one() {
                return Some(m);
            }
            acc = &acc * self;
        }
        None
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        if self.n == 1 || other.n == 1 {
            return false;
        }
        let (a, b) = Self::common(self, other);
        a.c == b.c
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for CycScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for CycScalar {
    fn from(k: i64) -> Self {
        Self::from_int(k)
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.add_ref(rhs)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.add_ref(&-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = self.add_ref(&-rhs);
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        write!(f, "{} [n={}]", parts.join(" + "), self.n)
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
