//! Exact arithmetic in ℤ[ζₙ] and ℚ(ζₙ).
//!
//! A [`CycInt`] stores its coordinates in the power basis `1, ζₙ, …, ζₙ^{φ(n)-1}`
//! of the smallest cyclotomic field containing it (its conductor, never ≡ 2 mod 4).
//! Because that representation is unique, structural equality is field equality
//! and values coming from different tables compare directly.

mod field;
mod galois;

pub use field::{FiniteField, FqElem, FqReduction};
pub use galois::{trace_to_subfield, GaloisSubgroup};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, gcd, gcd_i64, lcm, mod_inv, prime_divisors};
use crate::error::{Error, Result};

/// Per-modulus reduction data: Φₙ and the reduced form of every ζₙ^j, j < n.
pub(crate) struct CycloData {
    pub phi: usize,
    pub powers: Vec<Vec<i64>>,
}

fn registry() -> &'static RwLock<HashMap<u64, Arc<CycloData>>> {
    static REG: OnceLock<RwLock<HashMap<u64, Arc<CycloData>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn data(n: u64) -> Arc<CycloData> {
    if let Some(d) = registry().read().unwrap().get(&n) {
        return d.clone();
    }
    let d = Arc::new(build_data(n));
    registry().write().unwrap().entry(n).or_insert(d).clone()
}

fn build_data(n: u64) -> CycloData {
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut v = vec![0i64; phi];
    v[0] = 1;
    for _ in 0..n {
        powers.push(v.clone());
        // multiply by x and reduce x^phi = -(poly[0] + … + poly[phi-1] x^{phi-1})
        let top = v[phi - 1];
        for i in (1..phi).rev() {
            v[i] = v[i - 1];
        }
        v[0] = 0;
        if top != 0 {
            for i in 0..phi {
                v[i] -= top * poly[i];
            }
        }
    }
    CycloData { phi, powers }
}

/// Coefficients of Φₙ from low to high degree.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = div_monic(&num, &cyclotomic_polynomial(d));
    }
    cache.write().unwrap().insert(n, num.clone());
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// An element of ℤ[ζₙ] in the power basis at its conductor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CycIntRepr", into = "CycIntRepr")]
pub struct CycInt {
    n: u64,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    n: u64,
    coeffs: Vec<i64>,
}

impl TryFrom<CycIntRepr> for CycInt {
    type Error = Error;
    fn try_from(r: CycIntRepr) -> Result<Self> {
        CycInt::from_coeffs(r.n, r.coeffs)
    }
}

impl From<CycInt> for CycIntRepr {
    fn from(c: CycInt) -> Self {
        CycIntRepr { n: c.n, coeffs: c.coeffs }
    }
}

impl CycInt {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(t: i64) -> Self {
        CycInt { n: 1, coeffs: vec![t] }
    }

    /// ζₙ^k.
    pub fn root(n: u64, k: u64) -> Self {
        assert!(n >= 1);
        let d = data(n);
        Self::normalized(n, d.powers[(k % n) as usize].clone())
    }

    /// Power-basis coordinates at modulus `n`; the length must be φ(n).
    pub fn from_coeffs(n: u64, coeffs: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Schema("cyclotomic modulus must be positive".into()));
        }
        if coeffs.len() as u64 != euler_phi(n) {
            return Err(Error::Schema(format!(
                "modulus {n} needs {} coefficients, got {}",
                euler_phi(n),
                coeffs.len()
            )));
        }
        Ok(Self::normalized(n, coeffs))
    }

    /// Σₛ mult[s]·ζₙ^s for s < n.
    pub fn from_root_multiplicities(n: u64, mult: &[i64]) -> Self {
        let d = data(n);
        let mut c = vec![0i64; d.phi];
        for (s, &m) in mult.iter().enumerate() {
            if m != 0 {
                axpy(&mut c, m, &d.powers[s % n as usize]);
            }
        }
        Self::normalized(n, c)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.coeffs[0] == 0
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0] == 1
    }

    /// The value as a rational integer, if it is one.
    pub fn as_int(&self) -> Option<i64> {
        (self.n == 1).then(|| self.coeffs[0])
    }

    /// Coordinates at a multiple `m` of the conductor (not normalized).
    pub fn lift_to(&self, m: u64) -> Vec<i64> {
        assert!(m % self.n == 0, "lift target {m} is not a multiple of {}", self.n);
        let d = data(m);
        if self.n == m {
            return self.coeffs.clone();
        }
        let step = m / self.n;
        let mut out = vec![0i64; d.phi];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                axpy(&mut out, c, &d.powers[(j as u64 * step) as usize]);
            }
        }
        out
    }

    pub(crate) fn normalized(n: u64, coeffs: Vec<i64>) -> Self {
        let mut n = n;
        let mut coeffs = coeffs;
        'descend: loop {
            if coeffs.iter().skip(1).all(|&c| c == 0) {
                return CycInt { n: 1, coeffs: vec![coeffs[0]] };
            }
            for p in prime_divisors(n) {
                if let Some(c) = descend(n, &coeffs, p) {
                    n /= p;
                    coeffs = c;
                    continue 'descend;
                }
            }
            return CycInt { n, coeffs };
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        if self.n == 1 && other.n == 1 {
            return Self::from_int(self.coeffs[0] + sign * other.coeffs[0]);
        }
        let m = lcm(self.n, other.n);
        let mut a = self.lift_to(m);
        let b = other.lift_to(m);
        axpy(&mut a, sign, &b);
        Self::normalized(m, a)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, t: i64) -> Self {
        if t == 0 {
            return Self::zero();
        }
        CycInt { n: self.n, coeffs: self.coeffs.iter().map(|&c| c * t).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.n == 1 {
            return other.scale(self.coeffs[0]);
        }
        if other.n == 1 {
            return self.scale(other.coeffs[0]);
        }
        let m = lcm(self.n, other.n);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        let d = data(m);
        let mut prod = vec![0i64; 2 * d.phi - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let mut out = vec![0i64; d.phi];
        for (t, &c) in prod.iter().enumerate() {
            if c != 0 {
                axpy(&mut out, c, &d.powers[t % m as usize]);
            }
        }
        Self::normalized(m, out)
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois_unchecked(self.n - 1)
    }

    /// The automorphism ζ ↦ ζ^k of ℚ(ζ_conductor); `k` must be a unit modulo the conductor.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let kk = k.rem_euclid(self.n as i64) as u64;
        if gcd(kk, self.n) != 1 && self.n != 1 {
            return Err(Error::NotAUnit { k, n: self.n });
        }
        Ok(self.galois_unchecked(kk))
    }

    /// ζₙ ↦ ζₙ^k for a unit `k` mod `n`, where the conductor divides `n`.
    pub fn galois_in(&self, k: i64, n: u64) -> Result<Self> {
        let kk = k.rem_euclid(n as i64) as u64;
        if n != 1 && gcd(kk, n) != 1 {
            return Err(Error::NotAUnit { k, n });
        }
        if n % self.n != 0 {
            return Err(Error::IncompatibleModulus { value: self.n, reduction: n });
        }
        Ok(self.galois_unchecked(kk % self.n))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        if self.n == 1 || k % self.n == 1 {
            return self.clone();
        }
        let d = data(self.n);
        let mut out = vec![0i64; d.phi];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                axpy(&mut out, c, &d.powers[((j as u64 * k) % self.n) as usize]);
            }
        }
        Self::normalized(self.n, out)
    }

    /// True iff every power-basis coordinate is divisible by `m`.
    pub fn divisible_by_int(&self, m: u64) -> bool {
        assert!(m > 0);
        self.coeffs.iter().all(|&c| c.rem_euclid(m as i64) == 0)
    }

    pub fn div_exact_int(&self, m: i64) -> Option<Self> {
        assert!(m != 0);
        if self.coeffs.iter().any(|&c| c % m != 0) {
            return None;
        }
        Some(CycInt { n: self.n, coeffs: self.coeffs.iter().map(|&c| c / m).collect() })
    }

    /// gcd of the coordinates (0 for zero).
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0, |g, &c| gcd_i64(g, c))
    }
}

/// Coordinates of `coeffs` (at modulus `n`) in ℤ[ζ_{n/p}], if the value lies there.
fn descend(n: u64, coeffs: &[i64], p: u64) -> Option<Vec<i64>> {
    let m = n / p;
    if m % p == 0 {
        // basis {ζ_m^i ζ_n^r : r < p}; membership means only r = 0 survives
        if coeffs.iter().enumerate().any(|(j, &c)| c != 0 && j as u64 % p != 0) {
            return None;
        }
        return Some(coeffs.iter().step_by(p as usize).copied().collect());
    }
    // p ∤ m: ζ_n^j = ζ_m^a ζ_p^b; the relative trace maps it to ζ_m^a·(p-1 or -1)
    let pinv = mod_inv(p % m, m).unwrap_or(0);
    let minv = mod_inv(m % p, p).unwrap();
    let dm = data(m);
    let mut acc = vec![0i64; dm.phi];
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let j = j as u64;
        let a = if m == 1 { 0 } else { (j % m) * pinv % m };
        let b = (j % p) * minv % p;
        let w = if b == 0 { p as i64 - 1 } else { -1 };
        axpy(&mut acc, c * w, &dm.powers[a as usize]);
    }
    let pm1 = p as i64 - 1;
    if acc.iter().any(|&c| c % pm1 != 0) {
        return None;
    }
    let cand: Vec<i64> = acc.iter().map(|&c| c / pm1).collect();
    let back = CycInt { n: m, coeffs: cand.clone() }.lift_to(n);
    (back == coeffs).then_some(cand)
}

fn axpy(dst: &mut [i64], a: i64, x: &[i64]) {
    for (d, &v) in dst.iter_mut().zip(x) {
        *d += a * v;
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let term = match (j, mag) {
                (0, _) => format!("{mag}"),
                (_, 1) => format!("z{}^{}", self.n, j),
                _ => format!("{mag}*z{}^{}", self.n, j),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

impl From<i64> for CycInt {
    fn from(t: i64) -> Self {
        Self::from_int(t)
    }
}

/// Sums many terms at a fixed modulus and normalizes once.
pub struct CycAccumulator {
    n: u64,
    coeffs: Vec<i64>,
}

impl CycAccumulator {
    pub fn new(n: u64) -> Self {
        CycAccumulator { n, coeffs: vec![0; euler_phi(n) as usize] }
    }

    pub fn add_scaled(&mut self, x: &CycInt, t: i64) {
        if t == 0 || x.is_zero() {
            return;
        }
        if x.n == 1 {
            self.coeffs[0] += t * x.coeffs[0];
        } else {
            let lifted = x.lift_to(self.n);
            axpy(&mut self.coeffs, t, &lifted);
        }
    }

    pub fn finish(self) -> CycInt {
        CycInt::normalized(self.n, self.coeffs)
    }
}

/// An element of ℚ(ζₙ): a [`CycInt`] numerator over a positive denominator in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycNumRepr", into = "CycNumRepr")]
pub struct CycNum {
    num: CycInt,
    den: u64,
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    n: u64,
    coeffs: Vec<i64>,
    den: u64,
}

impl TryFrom<CycNumRepr> for CycNum {
    type Error = Error;
    fn try_from(r: CycNumRepr) -> Result<Self> {
        if r.den == 0 {
            return Err(Error::Schema("zero denominator".into()));
        }
        Ok(CycNum::new(CycInt::from_coeffs(r.n, r.coeffs)?, r.den as i64))
    }
}

impl From<CycNum> for CycNumRepr {
    fn from(c: CycNum) -> Self {
        CycNumRepr { n: c.num.n, coeffs: c.num.coeffs, den: c.den }
    }
}

impl CycNum {
    pub fn new(num: CycInt, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (num.neg(), -den) } else { (num, den) };
        let g = gcd_i64(num.content(), den);
        let g = if g == 0 { den } else { g };
        CycNum { num: num.div_exact_int(g).unwrap(), den: (den / g) as u64 }
    }

    pub fn zero() -> Self {
        CycInt::zero().into()
    }

    pub fn numerator(&self) -> &CycInt {
        &self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn to_cycint(&self) -> Option<CycInt> {
        self.is_integral().then(|| self.num.clone())
    }

    /// The value as a rational number `(num, den)`, if it is rational.
    pub fn as_rational(&self) -> Option<(i64, u64)> {
        self.num.as_int().map(|t| (t, self.den))
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = lcm(self.den, other.den);
        let a = self.num.scale((d / self.den) as i64);
        let b = other.num.scale((d / other.den) as i64);
        CycNum::new(a.add(&b), d as i64)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNum { num: self.num.neg(), den: self.den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CycNum::new(self.num.mul(&other.num), (self.den * other.den) as i64)
    }

    pub fn conj(&self) -> Self {
        CycNum { num: self.num.conj(), den: self.den }
    }

    pub fn div_int(&self, t: i64) -> Self {
        CycNum::new(self.num.clone(), self.den as i64 * t)
    }

    pub fn scale(&self, t: i64) -> Self {
        CycNum::new(self.num.scale(t), self.den as i64)
    }
}

impl From<CycInt> for CycNum {
    fn from(num: CycInt) -> Self {
        CycNum { num, den: 1 }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}
