use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ClassSummary, Group, Subgroup};
use crate::arith::{p_prime_part, prime_divisors, units_mod};

/// Automorphisms of ⟨g⟩ induced by conjugation, as residues mod o(g).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutData {
    pub base_class: usize,
    pub n: u64,
    pub aut_full: Vec<u64>,
    pub aut0_by_prime: BTreeMap<u64, Vec<u64>>,
    pub aut0_order: u64,
}

impl AutData {
    /// Builds the Aut⁰ parts from the full residue list.
    pub fn from_full(base_class: usize, n: u64, aut_full: Vec<u64>) -> Self {
        let mut aut0_by_prime = BTreeMap::new();
        for p in prime_divisors(n) {
            let m = aut0_modulus(n, p);
            let sub: Vec<u64> = aut_full.iter().copied().filter(|&r| r % m == 1 % m).collect();
            aut0_by_prime.insert(p, sub);
        }
        let aut0_order = aut0_by_prime.values().map(|v| v.len() as u64).product();
        AutData { base_class, n, aut_full, aut0_by_prime, aut0_order }
    }

    pub fn aut_order(&self) -> u64 {
        self.aut_full.len() as u64
    }

    pub fn aut0_order_at(&self, p: u64) -> u64 {
        self.aut0_by_prime.get(&p).map_or(1, |v| v.len() as u64)
    }
}

/// The modulus M with Aut⁰_{G,p}(g) = {m ∈ Aut_G(g) : m ≡ 1 mod M}.
pub fn aut0_modulus(n: u64, p: u64) -> u64 {
    let q = p_prime_part(n, p);
    if p == 2 && n % 4 == 0 {
        4 * q
    } else {
        p * q
    }
}

/// Aut_G(g) for g in class `c`, read off the power maps: r ∈ Aut_G(g) iff g^r lies in the
/// class of g.
pub fn aut_data_from_classes(classes: &[ClassSummary], c: usize) -> AutData {
    let n = classes[c].elt_order;
    let full = units_mod(n).into_iter().filter(|&r| classes[c].power_map[r as usize] == c).collect();
    AutData::from_full(c, n, full)
}

pub fn aut_data(g: &Group, x: usize) -> AutData {
    let n = g.elt_order(x);
    let c = g.class_of(x);
    let full = units_mod(n).into_iter().filter(|&r| g.class_of(g.pow(x, r)) == c).collect();
    AutData::from_full(c, n, full)
}

/// Same as [`aut_data`] with conjugation restricted to `h` (which must contain `x`).
pub fn aut_data_in_subgroup(g: &Group, h: &Subgroup, x: usize) -> AutData {
    let n = g.elt_order(x);
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        for &s in h.gens() {
            let y = g.conjugate(orbit[i], s);
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    let full = units_mod(n).into_iter().filter(|&r| orbit.contains(&g.pow(x, r))).collect();
    AutData::from_full(g.class_of(x), n, full)
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::*;

    #[test]
    fn identity() {
        let a = aut_data(&sym(4), 0);
        assert_eq!(a.aut_full, vec![0]);
        assert_eq!(a.aut0_order, 1);
    }

    #[test]
    fn s5_five_cycle() {
        let g = sym(5);
        let x = g.classes().iter().find(|c| c.elt_order == 5).unwrap().rep;
        let a = aut_data(&g, x);
        assert_eq!(a.aut_order(), 4);
        assert_eq!(a.aut0_by_prime[&5], vec![1]);
        assert_eq!(a.aut0_order, 1);
    }

    #[test]
    fn s4_four_cycle() {
        let g = sym(4);
        let x = g.classes().iter().find(|c| c.elt_order == 4).unwrap().rep;
        let a = aut_data(&g, x);
        assert_eq!(a.aut_full, vec![1, 3]);
        assert_eq!(a.aut0_by_prime[&2], vec![1]);
        assert_eq!(a.aut0_order, 1);
    }

    #[test]
    fn aut_matches_normalizer_quotient() {
        for g in [sym(4), sym(5), alt5(), q8()] {
            for c in g.classes() {
                let a = aut_data(&g, c.rep);
                let quo = g.normalizer_of_cyclic(c.rep).order() / g.centralizer(c.rep).order();
                assert_eq!(a.aut_order(), quo);
                assert_eq!(a.aut_order() % a.aut0_order, 0);
                for v in a.aut0_by_prime.values() {
                    assert!(v.iter().all(|r| a.aut_full.contains(r)));
                }
            }
        }
    }

    #[test]
    fn table_derived_matches_group() {
        for g in [sym(4), sym(5), alt5(), q8(), cyclic(12)] {
            let cs = g.class_summaries();
            for c in g.classes() {
                assert_eq!(aut_data_from_classes(&cs, c.id), aut_data(&g, c.rep));
            }
        }
    }

    #[test]
    fn nilpotent_index_at_most_two() {
        for g in [sym(4), sym(5), q8()] {
            for p in prime_divisors(g.order()) {
                let s = g.sylow(p);
                for &x in s.members() {
                    let a = aut_data_in_subgroup(&g, &s, x);
                    assert!(a.aut_order() <= 2 * a.aut0_order);
                }
            }
        }
    }
}
