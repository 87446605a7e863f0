//! Doubly transitive actions and faithful characters of odd prime-power degree.

use super::divisibility::conj2_holds;
use super::{skipped, Analysis, CheckId, CheckOptions, CheckReport, Scan, Witness, NEEDS_GROUP};
use crate::arith::is_prime_power;
use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Index of χ = π − 1 in the table, π the permutation character of the natural action.
pub fn doubly_transitive_constituent(g: &Group, t: &CharTable) -> Result<usize> {
    if !g.is_2transitive() {
        return Err(Error::NotDoublyTransitive);
    }
    let chi: Vec<i64> = g
        .classes()
        .iter()
        .map(|c| g.perm(c.rep).iter().enumerate().filter(|&(i, &x)| i == x as usize).count() as i64 - 1)
        .collect();
    t.characters
        .iter()
        .position(|ch| ch.values.iter().zip(&chi).all(|(v, &x)| v.as_int() == Some(x)))
        .ok_or(Error::NotIrreducible)
}

/// |Q| divides |G|·χ(g)/χ(1) with Q a Sylow p-subgroup of N_G⟨g_p⟩ ∩ C_G(g_{p'}), the form
/// without the index-2 allowance at p = 2.
pub(super) fn perm1(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let Some(g) = a.group else { return Ok(skipped(CheckId::Perm1Strong, a, NEEDS_GROUP)) };
    let chi = match doubly_transitive_constituent(g, a.table) {
        Err(Error::NotDoublyTransitive) => {
            return Ok(skipped(CheckId::Perm1Strong, a, &Error::NotDoublyTransitive.to_string()))
        }
        r => r?,
    };
    let primes = a.primes(opts);
    let d = a.degree(chi) as i64;
    let mut s = Scan::new(opts);
    for (k, class) in g.classes().iter().enumerate() {
        let value = a.table.characters[chi].values[k].as_int().expect("permutation characters are rational");
        for &p in &primes {
            let (gp, gq) = g.p_part(class.rep, p);
            let c = g.centralizer(gq);
            let n = g.normalizer_of_cyclic(gp);
            let inter: Vec<usize> = n.members().iter().copied().filter(|&x| c.contains(x)).collect();
            let q = Subgroup::from_members(g, inter).sylow(g, p).order() as i64;
            let num = g.order() as i64 * value;
            s.check(num % (d * q) == 0, || {
                Witness::new(Some(chi), Some(k))
                    .with("p", p)
                    .with("element_order", class.elt_order)
                    .with("degree", d)
                    .with("group_order", g.order())
                    .with("value", value)
                    .with("q_order", q)
                    .with("broken", format!("{q} ∤ {num}/{d}"))
            });
        }
    }
    s.note("character", chi);
    Ok(s.finish(CheckId::Perm1Strong, a, primes))
}

fn is_faithful(t: &CharTable, chi: usize) -> bool {
    let ch = &t.characters[chi];
    (1..t.num_classes()).all(|k| ch.values[k] != ch.values[0])
}

/// For faithful χ with χ(1) = p^k (p odd, k ≥ 1) satisfying the central-character
/// congruence: every g in a Sylow P with ⟨g⟩ ⊴ P is central or has χ(g) = 0.
pub(super) fn odd_ppower_vanishing(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let Some(g) = a.group else { return Ok(skipped(CheckId::OddPPowerVanishing, a, NEEDS_GROUP)) };
    let t = a.table;
    let r = t.num_classes();
    let primes: Vec<u64> = a.primes(opts).into_iter().filter(|&p| p != 2).collect();
    let mut candidates = Vec::new();
    let mut premise_unmet = Vec::new();
    for chi in 0..r {
        let Some((p, _)) = is_prime_power(t.characters[chi].degree()) else { continue };
        if !primes.contains(&p) || !is_faithful(t, chi) {
            continue;
        }
        let mut premise = true;
        for k in 0..r {
            premise &= conj2_holds(a, chi, k)?;
        }
        if premise {
            candidates.push((chi, p));
        } else {
            premise_unmet.push(chi);
        }
    }
    if candidates.is_empty() {
        let reason = if premise_unmet.is_empty() {
            "no faithful character of odd prime-power degree"
        } else {
            "central-character congruence not established for the faithful candidates"
        };
        return Ok(skipped(CheckId::OddPPowerVanishing, a, reason));
    }
    let mut s = Scan::new(opts);
    let mut used: Vec<u64> = Vec::new();
    for (chi, p) in candidates {
        if !used.contains(&p) {
            used.push(p);
        }
        let sylow = g.sylow(p);
        for &x in sylow.members() {
            let cyc = Subgroup::generated(g, &[x]);
            if !sylow.gens().iter().all(|&s| cyc.normalizes(g, s)) {
                continue;
            }
            let k = g.class_of(x);
            let central = g.classes()[k].size == 1;
            s.check(central || t.characters[chi].values[k].is_zero(), || {
                Witness::new(Some(chi), Some(k))
                    .with("p", p)
                    .with("element_order", g.elt_order(x))
                    .with("degree", a.degree(chi))
                    .with("class_size", g.classes()[k].size)
                    .with("value", super::show(&t.characters[chi].values[k]))
            });
        }
    }
    used.sort_unstable();
    Ok(s.finish(CheckId::OddPPowerVanishing, a, used))
}
