use serde::{Deserialize, Serialize};

use crate::arith::{gcd, p_prime_part};
use crate::error::{Error, Result};

/// The class data that survives without the group: enough for sections, p-parts and checks
/// on imported tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub size: u64,
    pub elt_order: u64,
    pub centralizer_order: u64,
    pub power_map: Vec<usize>,
}

/// Exponents `(a, b)` with g_p = g^a and g_{p'} = g^b for an element of order `n`.
pub fn p_part_exponents(n: u64, p: u64) -> (u64, u64) {
    super::crt_exponents(n, p)
}

/// Class of the p-part (and p'-part) of the elements of class `c`.
pub fn p_part_class(classes: &[ClassSummary], c: usize, p: u64) -> (usize, usize) {
    let (a, b) = p_part_exponents(classes[c].elt_order, p);
    (classes[c].power_map[a as usize], classes[c].power_map[b as usize])
}

fn check_p_element(classes: &[ClassSummary], x: usize, p: u64) -> Result<()> {
    if p_prime_part(classes[x].elt_order, p) != 1 {
        return Err(Error::NotAPElement(x));
    }
    Ok(())
}

/// Classes whose p-parts lie in class `x`.
pub fn p_section(classes: &[ClassSummary], x: usize, p: u64) -> Result<Vec<usize>> {
    check_p_element(classes, x, p)?;
    Ok((0..classes.len()).filter(|&c| p_part_class(classes, c, p).0 == x).collect())
}

/// Classes whose p-parts generate a cyclic subgroup conjugate to ⟨x⟩.
pub fn rational_p_section(classes: &[ClassSummary], x: usize, p: u64) -> Result<Vec<usize>> {
    check_p_element(classes, x, p)?;
    let o = classes[x].elt_order;
    let mut gens: Vec<usize> = (1..=o.max(1))
        .filter(|&k| gcd(k, o) == 1)
        .map(|k| classes[x].power_map[(k % o) as usize])
        .collect();
    gens.sort_unstable();
    gens.dedup();
    Ok((0..classes.len())
        .filter(|&c| gens.binary_search(&p_part_class(classes, c, p).0).is_ok())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::test_groups::*;
    use super::*;

    #[test]
    fn identity_section_is_p_regular() {
        let g = sym(4);
        let cs = g.class_summaries();
        let s = p_section(&cs, 0, 2).unwrap();
        let expect: Vec<usize> =
            (0..cs.len()).filter(|&c| cs[c].elt_order % 2 == 1).collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn s5_five_cycles() {
        let g = sym(5);
        let cs = g.class_summaries();
        let x = cs.iter().position(|c| c.elt_order == 5).unwrap();
        assert_eq!(rational_p_section(&cs, x, 5).unwrap(), vec![x]);
        assert!(matches!(p_section(&cs, x, 2), Err(Error::NotAPElement(_))));
    }

    #[test]
    fn c9_generators() {
        let g = cyclic(9);
        let cs = g.class_summaries();
        let x = g.class_of(g.generators()[0]);
        assert_eq!(p_section(&cs, x, 3).unwrap(), vec![x]);
        let t = rational_p_section(&cs, x, 3).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|&c| cs[c].elt_order == 9));
    }

    #[test]
    fn sections_partition() {
        for g in [sym(4), sym(5), alt5(), q8(), cyclic(12)] {
            let cs = g.class_summaries();
            for p in crate::arith::prime_divisors(g.order()) {
                let mut seen = vec![0; cs.len()];
                for x in 0..cs.len() {
                    if let Ok(s) = p_section(&cs, x, p) {
                        for c in s {
                            seen[c] += 1;
                        }
                    }
                }
                assert!(seen.iter().all(|&k| k == 1));
            }
        }
    }
}
