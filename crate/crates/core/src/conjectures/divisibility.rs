//! Order/degree divisibility and central-character congruences.

use super::{skipped, Analysis, CheckId, CheckOptions, CheckReport, Scan, Witness};
use crate::arith::{nu_p, p_part, prime_divisors, squarefree_part};
use crate::chartab::CharTable;
use crate::error::Result;
use crate::group::p_part_class;

fn cofactor(t: &CharTable, chi: usize) -> u64 {
    t.order / t.characters[chi].degree()
}

/// o(g) divides |G|/χ(1) for g in class `k`, or χ vanishes there.
pub fn conj1_holds(t: &CharTable, chi: usize, k: usize) -> bool {
    t.characters[chi].values[k].is_zero() || cofactor(t, chi) % t.classes[k].elt_order == 0
}

pub fn conj1_at_p_holds(t: &CharTable, chi: usize, k: usize, p: u64) -> bool {
    t.characters[chi].values[k].is_zero() || nu_p(t.classes[k].elt_order, p) <= nu_p(cofactor(t, chi), p)
}

/// ω_χ(g) ≡ 0 mod |Aut⁰_G(g)|.
pub fn conj2_holds(a: &Analysis, chi: usize, k: usize) -> Result<bool> {
    Ok(a.table.central_character(chi, k)?.divisible_by_int(a.auts[k].aut0_order))
}

pub fn conj2_at_p_holds(a: &Analysis, chi: usize, k: usize, p: u64) -> Result<bool> {
    Ok(a.table.central_character(chi, k)?.divisible_by_int(a.auts[k].aut0_order_at(p)))
}

fn base_witness(t: &CharTable, chi: usize, k: usize) -> Witness {
    Witness::new(Some(chi), Some(k))
        .with("element_order", t.classes[k].elt_order)
        .with("degree", t.characters[chi].degree())
        .with("group_order", t.order)
        .with("value", super::show(&t.characters[chi].values[k]))
}

fn support<'a>(a: &'a Analysis<'_>) -> impl Iterator<Item = (usize, usize)> + 'a {
    let r = a.table.num_classes();
    (0..r).flat_map(move |chi| (0..r).map(move |k| (chi, k))).filter(|&(chi, k)| a.chi_nonzero(chi, k))
}

pub(super) fn conj1(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let mut s = Scan::new(opts);
    for (chi, k) in support(a) {
        s.check(conj1_holds(t, chi, k), || {
            base_witness(t, chi, k).with("broken", format!("{} ∤ {}", t.classes[k].elt_order, cofactor(t, chi)))
        });
    }
    Ok(s.finish(CheckId::Conj1, a, Vec::new()))
}

pub(super) fn conj1_at_p(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let primes = a.primes(opts);
    let mut s = Scan::new(opts);
    for &p in &primes {
        for (chi, k) in support(a) {
            s.check(conj1_at_p_holds(t, chi, k, p), || {
                base_witness(t, chi, k).with("p", p).with(
                    "broken",
                    format!("ν_{p}({}) > ν_{p}({})", t.classes[k].elt_order, cofactor(t, chi)),
                )
            });
        }
    }
    Ok(s.finish(CheckId::Conj1AtP, a, primes))
}

pub(super) fn thm_main_i(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let mut s = Scan::new(opts);
    for (chi, k) in support(a) {
        let n = t.classes[k].elt_order as u128;
        let q = cofactor(t, chi) as u128;
        let lhs = n * squarefree_part(n as u64) as u128;
        s.check((q * q) % lhs == 0, || {
            base_witness(t, chi, k).with("broken", format!("{lhs} ∤ {}", q * q))
        });
    }
    Ok(s.finish(CheckId::ThmMainI, a, Vec::new()))
}

pub(super) fn thm_main_ii(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let mut s = Scan::new(opts);
    let g = t.order as u128;
    for (chi, k) in support(a) {
        let n = t.classes[k].elt_order as u128;
        let d = t.characters[chi].degree() as u128;
        // |G|³/χ(1)² is an integer since χ(1) divides |G|
        let rhs = g * (g / d) * (g / d);
        s.check(rhs % (n * n * n) == 0, || {
            base_witness(t, chi, k).with("broken", format!("{} ∤ {rhs}", n * n * n))
        });
    }
    Ok(s.finish(CheckId::ThmMainII, a, Vec::new()))
}

/// Whenever n_p ∤ |G|/χ(1): p³ | n, p³ | χ(1) and p⁵ | |G|.
pub(super) fn cor_cubefree(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let mut s = Scan::new(opts);
    let mut triggered = 0u64;
    for (chi, k) in support(a) {
        let n = t.classes[k].elt_order;
        let q = cofactor(t, chi);
        let d = t.characters[chi].degree();
        for p in prime_divisors(n) {
            if q % p_part(n, p) == 0 {
                continue;
            }
            triggered += 1;
            let (p3, p5) = (p.pow(3), p.pow(5));
            s.check(n % p3 == 0 && d % p3 == 0 && t.order % p5 == 0, || {
                base_witness(t, chi, k).with("p", p).with("broken", format!("n_{p} ∤ {q} without p³|n, p³|χ(1), p⁵||G|"))
            });
        }
    }
    s.note("triggered", triggered);
    Ok(s.finish(CheckId::CorCubefree, a, Vec::new()))
}

/// 2ν_p(|G|/χ(1)) + ν_p(|Aut_G(g_p)|) ≥ 2ν_p(o(g)).
pub(super) fn autineq(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let primes = a.primes(opts);
    let mut s = Scan::new(opts);
    for (chi, k) in support(a) {
        let n = t.classes[k].elt_order;
        for p in prime_divisors(n).into_iter().filter(|p| primes.contains(p)) {
            let (gp, _) = p_part_class(&t.classes, k, p);
            let aut = a.auts[gp].aut_order();
            let lhs = 2 * nu_p(cofactor(t, chi), p) + nu_p(aut, p);
            let rhs = 2 * nu_p(n, p);
            s.check(lhs >= rhs, || {
                base_witness(t, chi, k)
                    .with("p", p)
                    .with("aut_order_p_part", aut)
                    .with("broken", format!("{lhs} < {rhs}"))
            });
        }
    }
    Ok(s.finish(CheckId::ThmAutIneq, a, primes))
}

fn conj2_witness(a: &Analysis, chi: usize, k: usize, modulus: u64) -> Result<Witness> {
    Ok(base_witness(a.table, chi, k)
        .with("class_size", a.table.classes[k].size)
        .with("omega", super::show(&a.table.central_character(chi, k)?))
        .with("aut_order", a.auts[k].aut_order())
        .with("modulus", modulus))
}

pub(super) fn conj2(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let r = a.table.num_classes();
    let mut s = Scan::new(opts);
    for chi in 0..r {
        for k in 0..r {
            let ok = conj2_holds(a, chi, k)?;
            let w = if ok { None } else { Some(conj2_witness(a, chi, k, a.auts[k].aut0_order)?) };
            s.check(ok, || w.unwrap());
        }
    }
    Ok(s.finish(CheckId::Conj2, a, Vec::new()))
}

pub(super) fn conj2_at_p(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let r = a.table.num_classes();
    let primes = a.primes(opts);
    let mut s = Scan::new(opts);
    for &p in &primes {
        for chi in 0..r {
            for k in 0..r {
                let ok = conj2_at_p_holds(a, chi, k, p)?;
                let w = if ok { None } else { Some(conj2_witness(a, chi, k, a.auts[k].aut0_order_at(p))?.with("p", p)) };
                s.check(ok, || w.unwrap());
            }
        }
    }
    Ok(s.finish(CheckId::Conj2AtP, a, primes))
}

/// For rational G and χ satisfying the central-character congruence everywhere:
/// n³/n₀ divides 4(|G|/χ(1))².
pub(super) fn rational_bound(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    if !t.is_rational() {
        return Ok(skipped(CheckId::ThmRationalBound, a, "not rational"));
    }
    let r = t.num_classes();
    let mut s = Scan::new(opts);
    let mut unverified = Vec::new();
    for chi in 0..r {
        let mut premise = true;
        for k in 0..r {
            premise &= conj2_holds(a, chi, k)?;
        }
        if !premise {
            unverified.push(chi);
            continue;
        }
        for k in (0..r).filter(|&k| a.chi_nonzero(chi, k)) {
            let n = t.classes[k].elt_order as u128;
            let lhs = n * n * n / squarefree_part(n as u64) as u128;
            let q = cofactor(t, chi) as u128;
            s.check((4 * q * q) % lhs == 0, || base_witness(t, chi, k).with("broken", format!("{lhs} ∤ {}", 4 * q * q)));
        }
    }
    if !unverified.is_empty() {
        s.note("characters_without_premise", unverified);
    }
    Ok(s.finish(CheckId::ThmRationalBound, a, Vec::new()))
}
