use std::fmt;

use super::CycInt;
use crate::arith::{multiplicative_order, p_prime_part, prime_divisors};
use crate::error::{Error, Result};

/// An element of GF(p^f): coefficients of a polynomial of degree < f, low to high.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(Vec<u64>);

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// GF(p^f) presented as GF(p)[x]/(g) for a monic irreducible g.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    f: usize,
    /// Monic modulus, low to high, length f + 1.
    poly: Vec<u64>,
}

impl FiniteField {
    /// Uses the least monic irreducible polynomial of degree `f`.
    pub fn new(p: u64, f: usize) -> Self {
        Self::with_rank(p, f, 0)
    }

    /// Uses the `rank`-th monic irreducible polynomial of degree `f`, ordered by the
    /// base-p integer formed from its lower coefficients. Ranks wrap around when there
    /// are fewer irreducibles than `rank + 1`.
    pub fn with_rank(p: u64, f: usize, rank: usize) -> Self {
        assert!(f >= 1);
        let count = p.pow(f as u32);
        let irreducibles: Vec<Vec<u64>> = (0..count)
            .map(|code| {
                let mut g = decode_digits(code, p, f);
                g.push(1);
                g
            })
            .filter(|g| is_irreducible(g, p))
            .take(rank + 1)
            .collect();
        let poly = irreducibles[rank % irreducibles.len()].clone();
        FiniteField { p, f, poly }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.f])
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, t: i64) -> FqElem {
        let mut v = vec![0; self.f];
        v[0] = t.rem_euclid(self.p as i64) as u64;
        FqElem(v)
    }

    pub fn decode(&self, code: u64) -> FqElem {
        FqElem(decode_digits(code, self.p, self.f))
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn scale(&self, a: &FqElem, t: i64) -> FqElem {
        let t = t.rem_euclid(self.p as i64) as u64;
        FqElem(a.0.iter().map(|x| x * t % self.p).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p;
        let f = self.f;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &g) in self.poly.iter().enumerate().take(f) {
                let idx = k - f + i;
                prod[idx] = (prod[idx] + (p - c) * g % p) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(f);
        FqElem(prod)
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut result = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        result
    }

    /// Least element (by base-p code) of multiplicative order p^f − 1.
    pub fn primitive_element(&self) -> FqElem {
        let q1 = self.size() - 1;
        let primes = prime_divisors(q1);
        (1..self.size())
            .map(|c| self.decode(c))
            .find(|x| primes.iter().all(|&r| self.pow(x, q1 / r) != self.one()))
            .expect("finite fields have primitive elements")
    }

    pub fn multiplicative_order(&self, a: &FqElem) -> u64 {
        assert!(!a.is_zero());
        let mut ord = self.size() - 1;
        for r in prime_divisors(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }
}

fn decode_digits(mut code: u64, p: u64, f: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(f);
    for _ in 0..f {
        v.push(code % p);
        code /= p;
    }
    v
}

fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    // den monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * d % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(g: &[u64], p: u64) -> bool {
    let f = g.len() - 1;
    if f == 1 {
        return true;
    }
    for d in 1..=f / 2 {
        for code in 0..p.pow(d as u32) {
            let mut h = decode_digits(code, p, d);
            h.push(1);
            if poly_rem(g, &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The ring map ℤ[ζ_N] → GF(p^f) with kernel a prime over p.
///
/// ζ_N goes to an element of order exactly N_{p'}, so roots of unity of p-power order go to 1.
#[derive(Clone, Debug)]
pub struct FqReduction {
    p: u64,
    modulus: u64,
    field: FiniteField,
    root: FqElem,
    root_order: u64,
    root_powers: Vec<FqElem>,
}

impl FqReduction {
    pub fn new(p: u64, modulus: u64) -> Self {
        Self::with_field_rank(p, modulus, 0)
    }

    pub fn with_field_rank(p: u64, modulus: u64, rank: usize) -> Self {
        let root_order = p_prime_part(modulus, p);
        let f = multiplicative_order(p % root_order.max(1), root_order).max(1) as usize;
        let field = FiniteField::with_rank(p, f, rank);
        let prim = field.primitive_element();
        let root = field.pow(&prim, (field.size() - 1) / root_order);
        let mut root_powers = Vec::with_capacity(root_order as usize);
        let mut x = field.one();
        for _ in 0..root_order {
            root_powers.push(x.clone());
            x = field.mul(&x, &root);
        }
        FqReduction { p, modulus, field, root, root_order, root_powers }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Image of ζ_N.
    pub fn root_map(&self) -> &FqElem {
        &self.root
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn reduce(&self, u: &CycInt) -> Result<FqElem> {
        let n = u.modulus();
        if self.modulus % n != 0 {
            return Err(Error::IncompatibleModulus { value: n, reduction: self.modulus });
        }
        let step = self.modulus / n;
        let mut acc = self.field.zero();
        for (j, &c) in u.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let r = &self.root_powers[((j as u64 * step) % self.root_order) as usize];
            acc = self.field.add(&acc, &self.field.scale(r, c));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_presentation() {
        let f = FiniteField::new(2, 2);
        assert_eq!(f.modulus_poly(), &[1, 1, 1]);
        let red = FqReduction::new(2, 3);
        let z = red.reduce(&CycInt::root(3, 1)).unwrap();
        assert_eq!(red.field().multiplicative_order(&z), 3);
    }

    #[test]
    fn reduction_examples() {
        let red = FqReduction::new(5, 60);
        assert_eq!(red.reduce(&CycInt::from_int(7)).unwrap(), red.field().from_int(2));
        assert_eq!(red.reduce(&CycInt::root(5, 1)).unwrap(), red.field().one());
        assert_eq!(red.reduce(&CycInt::root(25, 3)).is_err(), true);
        assert_eq!(red.root_order(), 12);
        assert_eq!(red.field().multiplicative_order(red.root_map()), 12);
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 2 over GF(3) is (9-3)/2 = 3
        let count = (0..9)
            .map(|c| {
                let mut g = decode_digits(c, 3, 2);
                g.push(1);
                g
            })
            .filter(|g| is_irreducible(g, 3))
            .count();
        assert_eq!(count, 3);
        let a = FiniteField::with_rank(3, 2, 0);
        let b = FiniteField::with_rank(3, 2, 1);
        assert_ne!(a.modulus_poly(), b.modulus_poly());
    }
}
