//! Section-indicator integrality and relative-trace divisibility.

use serde::Serialize;

use super::{Analysis, CheckId, CheckOptions, CheckReport, Scan, Witness};
use crate::arith::{euler_phi, nu_p, p_part, p_prime_part, prime_divisors, squarefree_part};
use crate::chartab::ClassFunction;
use crate::cyclotomic::{trace_to_subfield, CycInt, GaloisSubgroup};
use crate::error::Result;
use crate::group::p_section;

/// Outcome of a sweep over power-basis elements that needs no group.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TraceSweep {
    pub cases: u64,
    pub failures: Vec<String>,
}

fn is_p_power(n: u64, p: u64) -> bool {
    p_prime_part(n, p) == 1
}

/// |C_G(x)|_p·[δ, χ] for the rational section must be a rational integer, for the plain
/// section an algebraic integer.
pub(super) fn lemma1(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let primes = a.primes(opts);
    let r = t.num_classes();
    let mut s = Scan::new(opts);
    for &p in &primes {
        for x in (0..r).filter(|&x| is_p_power(t.classes[x].elt_order, p)) {
            let cp = p_part(t.classes[x].centralizer_order, p) as i64;
            let plain = ClassFunction::indicator(r, &p_section(&t.classes, x, p)?);
            for chi in 0..r {
                let rational = t.section_indicator_pairing(chi, x, p)?;
                s.check(rational.as_rational().is_some_and(|(_, d)| d == 1), || {
                    Witness::new(Some(chi), Some(x))
                        .with("p", p)
                        .with("section", "rational")
                        .with("pairing", super::show(&rational))
                        .with("centralizer_p_part", cp)
                });
                let ip = t.inner_product(&plain, &t.characters[chi].to_class_function()).scale(cp);
                s.check(ip.is_integral(), || {
                    Witness::new(Some(chi), Some(x))
                        .with("p", p)
                        .with("section", "plain")
                        .with("pairing", super::show(&ip))
                        .with("centralizer_p_part", cp)
                });
            }
        }
    }
    Ok(s.finish(CheckId::Lemma1Integrality, a, primes))
}

/// tr_{ℚ(ζₙ)/ℚ}(u) for u ∈ ℤ[ζₙ].
fn trace_to_q(u: &CycInt, n: u64) -> Result<CycInt> {
    trace_to_subfield(u, &GaloisSubgroup::full(n), &GaloisSubgroup::trivial(n))
}

/// For each class of order n: the absolute traces of χ(g), ω_χ(g)·conj(ω_χ(g)) and
/// ω_χ(g)·conj(ω_χ(g))·conj(ψ(g)) are divisible by n/n₀.
pub(super) fn lemma2(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let r = t.num_classes();
    let mut s = Scan::new(opts);
    for k in 0..r {
        let n = t.classes[k].elt_order;
        let m = n / squarefree_part(n);
        for chi in 0..r {
            let w = t.central_character(chi, k)?;
            let ww = w.mul(&w.conj());
            let mut us = vec![("value", t.characters[chi].values[k].clone()), ("omega_norm", ww.clone())];
            for psi in 0..r {
                us.push(("omega_norm_times_conj", ww.mul(&t.characters[psi].values[k].conj())));
            }
            for (what, u) in us {
                let tr = trace_to_q(&u, n)?;
                s.check(tr.divisible_by_int(m), || {
                    Witness::new(Some(chi), Some(k))
                        .with("element_order", n)
                        .with("u", what)
                        .with("trace", super::show(&tr))
                        .with("divisor", m)
                });
            }
        }
    }
    Ok(s.finish(CheckId::Lemma2Trace, a, Vec::new()))
}

/// Levels j with ℚ(ζ_{p^j·n_{p'}}) in the tower above the base field, or None when the
/// hypothesis k ≥ 2 fails.
fn tower(n: u64, p: u64) -> Option<std::ops::RangeInclusive<u32>> {
    let k = nu_p(n, p);
    if k < 2 {
        return None;
    }
    // for p = 2 the base is ℚ(ζ_{4n_{2'}}), which is where i enters
    let j0 = if p == 2 { 2 } else { 1 };
    Some(j0..=k)
}

fn level_field(n: u64, p: u64, j: u32) -> (u64, GaloisSubgroup) {
    let m = p.pow(j) * p_prime_part(n, p);
    (m, GaloisSubgroup::fixing_cyclotomic(n, m))
}

/// tr_{E/F}(u) is divisible by |E:F| for F ⊆ E in the p-tower over ℚ(ζ_{p·n_{p'}}).
pub(super) fn tracelemma(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let t = a.table;
    let r = t.num_classes();
    let primes = a.primes(opts);
    let mut s = Scan::new(opts);
    for k in 0..r {
        let n = t.classes[k].elt_order;
        for p in prime_divisors(n).into_iter().filter(|p| primes.contains(p)) {
            let Some(levels) = tower(n, p) else { continue };
            let top = GaloisSubgroup::trivial(n);
            for chi in 0..r {
                let w = t.central_character(chi, k)?;
                for (what, x) in [("value", &t.characters[chi].values[k]), ("omega", &w)] {
                    for je in levels.clone() {
                        let (_, e_fix) = level_field(n, p, je);
                        let u = trace_to_subfield(x, &e_fix, &top)?;
                        for jf in *levels.start()..=je {
                            let (_, f_fix) = level_field(n, p, jf);
                            let deg = p.pow(je - jf);
                            let tr = trace_to_subfield(&u, &f_fix, &e_fix)?;
                            s.check(tr.divisible_by_int(deg), || {
                                Witness::new(Some(chi), Some(k))
                                    .with("p", p)
                                    .with("element_order", n)
                                    .with("u", what)
                                    .with("levels", format!("{jf} ⊆ {je}"))
                                    .with("trace", super::show(&tr))
                                    .with("degree", deg)
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(s.finish(CheckId::TraceLemma, a, primes))
}

/// Absolute traces of ζₙ^i for i < φ(n), every n ≤ `max_n`, against n/n₀.
pub fn lemma2_basis_sweep(max_n: u64) -> Result<TraceSweep> {
    let mut out = TraceSweep::default();
    for n in 1..=max_n {
        let m = n / squarefree_part(n);
        for i in 0..euler_phi(n) {
            let tr = trace_to_q(&CycInt::root(n, i), n)?;
            out.cases += 1;
            if !tr.divisible_by_int(m) {
                out.failures.push(format!("n={n} i={i} trace={tr}"));
            }
        }
    }
    Ok(out)
}

/// Every tower pair F ⊆ E over ℚ(ζ_{p·n_{p'}}) (over ℚ(ζ_{4n_{2'}}) when p = 2) for n ≤ `max_n`,
/// with u ranging over the power basis of E.
pub fn tracelemma_sweep(max_n: u64) -> Result<TraceSweep> {
    let mut out = TraceSweep::default();
    for n in 1..=max_n {
        for p in prime_divisors(n) {
            let Some(levels) = tower(n, p) else { continue };
            for je in levels.clone() {
                let (me, e_fix) = level_field(n, p, je);
                for i in 0..euler_phi(me) {
                    let u = CycInt::root(n, i * (n / me));
                    for jf in *levels.start()..=je {
                        let (_, f_fix) = level_field(n, p, jf);
                        let deg = p.pow(je - jf);
                        let tr = trace_to_subfield(&u, &f_fix, &e_fix)?;
                        out.cases += 1;
                        if !tr.divisible_by_int(deg) {
                            out.failures.push(format!("n={n} p={p} E=ζ_{me}^{i} levels {jf}⊆{je} trace={tr}"));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps_are_clean() {
        let l2 = lemma2_basis_sweep(24).unwrap();
        assert!(l2.failures.is_empty(), "{:?}", l2.failures);
        assert!(l2.cases > 100);
        let tl = tracelemma_sweep(36).unwrap();
        assert!(tl.failures.is_empty(), "{:?}", tl.failures);
        assert!(tl.cases > 0);
    }

    #[test]
    fn tower_base_for_two() {
        assert_eq!(tower(8, 2), Some(2..=3));
        assert_eq!(tower(9, 3), Some(1..=2));
        assert_eq!(tower(6, 2), None);
    }
}
