use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CycAccumulator, CycInt};
use crate::arith::{euler_phi, gcd, units_mod};
use crate::error::{Error, Result};

/// A subgroup of (ℤ/nℤ)*, standing for the subfield of ℚ(ζₙ) it fixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisSubgroup {
    n: u64,
    residues: Vec<u64>,
}

impl GaloisSubgroup {
    /// Closure of `gens` under multiplication mod `n`.
    pub fn generated(n: u64, gens: &[u64]) -> Result<Self> {
        let one = 1 % n;
        let mut set = BTreeSet::from([one]);
        let mut frontier = vec![one];
        for &g in gens {
            if n > 1 && gcd(g % n, n) != 1 {
                return Err(Error::NotAUnit { k: g as i64, n });
            }
        }
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = x * (g % n) % n;
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(GaloisSubgroup { n, residues: set.into_iter().collect() })
    }

    /// Takes an explicit residue list, checking closure.
    pub fn from_residues(n: u64, residues: &[u64]) -> Result<Self> {
        let g = Self::generated(n, residues)?;
        if g.residues.len() != residues.iter().map(|r| r % n).collect::<BTreeSet<_>>().len() {
            return Err(Error::Schema("residue list is not closed under multiplication".into()));
        }
        Ok(g)
    }

    /// {1}: fixes all of ℚ(ζₙ).
    pub fn trivial(n: u64) -> Self {
        GaloisSubgroup { n, residues: vec![1 % n] }
    }

    /// All units: fixes ℚ.
    pub fn full(n: u64) -> Self {
        GaloisSubgroup { n, residues: units_mod(n) }
    }

    /// Units congruent to 1 modulo `m` (`m | n`): fixes ℚ(ζₘ).
    pub fn fixing_cyclotomic(n: u64, m: u64) -> Self {
        assert!(n % m == 0);
        let residues = units_mod(n).into_iter().filter(|&k| k % m == 1 % m).collect();
        GaloisSubgroup { n, residues }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn order(&self) -> usize {
        self.residues.len()
    }

    /// Degree of ℚ(ζₙ) over the fixed field.
    pub fn fixed_field_degree(&self) -> u64 {
        euler_phi(self.n) / self.residues.len() as u64
    }

    pub fn contains(&self, k: u64) -> bool {
        self.residues.binary_search(&(k % self.n)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.n == other.n && self.residues.iter().all(|&r| other.contains(r))
    }

    /// True iff `u` lies in the fixed field.
    pub fn fixes(&self, u: &CycInt) -> Result<bool> {
        for &k in &self.residues {
            if u.galois_in(k as i64, self.n)? != *u {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Relative trace tr_{E/F}(u), where `e_fix ⊆ f_fix` are the subgroups fixing E and F.
///
/// Sums σ(u) over one σ from each coset of `e_fix` in `f_fix`; the result is fixed by `f_fix`.
pub fn trace_to_subfield(u: &CycInt, f_fix: &GaloisSubgroup, e_fix: &GaloisSubgroup) -> Result<CycInt> {
    if !e_fix.is_subgroup_of(f_fix) {
        return Err(Error::NotNested);
    }
    let n = f_fix.n;
    if n % u.modulus() != 0 {
        return Err(Error::IncompatibleModulus { value: u.modulus(), reduction: n });
    }
    if !e_fix.fixes(u)? {
        return Err(Error::NotInField);
    }
    let mut seen = BTreeSet::new();
    let mut acc = CycAccumulator::new(n);
    for &s in &f_fix.residues {
        if seen.contains(&s) {
            continue;
        }
        for &e in &e_fix.residues {
            seen.insert(s * e % n);
        }
        acc.add_scaled(&u.galois_in(s as i64, n)?, 1);
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_examples() {
        let full = GaloisSubgroup::full(9);
        let triv = GaloisSubgroup::trivial(9);
        let z3 = CycInt::root(3, 1);
        assert_eq!(trace_to_subfield(&z3, &full, &triv).unwrap(), CycInt::from_int(-3));
        let z9 = CycInt::root(9, 1);
        assert!(trace_to_subfield(&z9, &full, &triv).unwrap().is_zero());
    }

    #[test]
    fn trace_of_base_field_element_scales() {
        // u ∈ ℚ(ζ₃) ⊂ ℚ(ζ₉), E = ℚ(ζ₉), F = ℚ(ζ₃): |E:F| = 3
        let u = CycInt::root(3, 1).add(&CycInt::from_int(2));
        let f = GaloisSubgroup::fixing_cyclotomic(9, 3);
        let e = GaloisSubgroup::trivial(9);
        assert_eq!(trace_to_subfield(&u, &f, &e).unwrap(), u.scale(3));
    }

    #[test]
    fn trace_rejects_outside_field() {
        let f = GaloisSubgroup::full(9);
        let e = GaloisSubgroup::fixing_cyclotomic(9, 3);
        assert!(matches!(
            trace_to_subfield(&CycInt::root(9, 1), &f, &e),
            Err(Error::NotInField)
        ));
        assert!(matches!(trace_to_subfield(&CycInt::one(), &e, &f), Err(Error::NotNested)));
    }

    #[test]
    fn subgroup_basics() {
        let g = GaloisSubgroup::generated(8, &[3]).unwrap();
        assert_eq!(g.residues(), &[1, 3]);
        assert_eq!(g.fixed_field_degree(), 2);
        assert!(GaloisSubgroup::from_residues(8, &[1, 3, 5]).is_err());
        assert!(GaloisSubgroup::generated(8, &[2]).is_err());
    }
}
