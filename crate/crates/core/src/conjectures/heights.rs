//! Height bounds in terms of the defect group's centre.

use std::collections::BTreeMap;

use serde_json::Value;

use super::divisibility::conj1_at_p_holds;
use super::{skipped, Analysis, CheckId, CheckOptions, CheckReport, Scan, Witness, NEEDS_GROUP};
use crate::arith::nu_p;
use crate::blocks::Block;
use crate::error::Result;

fn witness(a: &Analysis, p: u64, block: &Block, chi: usize, ht: u32, bound: String) -> Witness {
    let mut w = Witness::new(Some(chi), None)
        .with("p", p)
        .with("degree", a.degree(chi))
        .with("group_order", a.order())
        .with("defect", block.defect)
        .with("height", ht)
        .with("broken", bound);
    if let Some(d) = &block.defect_group {
        w = w.with("zd_exponent", d.zd_exponent).with("defect_group_order", d.order);
    }
    w
}

fn conj1_at_p_everywhere(a: &Analysis, p: u64) -> bool {
    let r = a.table.num_classes();
    (0..r).all(|chi| (0..r).all(|k| conj1_at_p_holds(a.table, chi, k, p)))
}

/// 2·ht(χ) ≤ a + d − 2ν_p(e(Z(D))). Imported tables have no defect groups, so the
/// ν_p(e(Z(D))) term is dropped there and the report says so.
pub(super) fn ht1_ii(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let primes = a.primes(opts);
    let blocks = a.blocks()?;
    let mut s = Scan::new(opts);
    for &p in &primes {
        let bd = &blocks[&p];
        for block in &bd.blocks {
            let z = block.defect_group.as_ref().map_or(0, |d| nu_p(d.zd_exponent, p));
            for (&chi, &ht) in block.characters.iter().zip(&block.heights) {
                let lhs = 2 * ht as i64;
                let rhs = (bd.a + block.defect) as i64 - 2 * z as i64;
                s.check(lhs <= rhs, || witness(a, p, block, chi, ht, format!("2·{ht} > {rhs}")));
            }
        }
    }
    if a.group.is_none() {
        s.note("weakened", "defect groups unavailable; centre term taken as zero");
    }
    Ok(s.finish(CheckId::ThmHt1II, a, primes))
}

/// ht(χ) ≤ d − ν_p(e(Z(D))), asserted only where one of its premises is established:
/// G solvable, D abelian, a − d ≤ 1, or the order/degree divisibility verified at p.
pub(super) fn ht1_i(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    if a.group.is_none() {
        return Ok(skipped(CheckId::ThmHt1I, a, NEEDS_GROUP));
    }
    let primes = a.primes(opts);
    let blocks = a.blocks()?;
    let solvable = a.is_solvable() == Some(true);
    let mut s = Scan::new(opts);
    let mut routes: BTreeMap<&str, u64> = BTreeMap::new();
    let mut uncertified = 0u64;
    for &p in &primes {
        let bd = &blocks[&p];
        let scanned = conj1_at_p_everywhere(a, p);
        for block in &bd.blocks {
            let d = block.defect_group.as_ref().expect("defect groups are attached when the group is known");
            let route = if solvable {
                "solvable"
            } else if d.is_abelian {
                "abelian_defect_group"
            } else if bd.a - block.defect <= 1 {
                "a_minus_d_at_most_1"
            } else if scanned {
                "conj1_at_p_verified"
            } else {
                uncertified += block.characters.len() as u64;
                continue;
            };
            let bound = block.defect as i64 - nu_p(d.zd_exponent, p) as i64;
            for (&chi, &ht) in block.characters.iter().zip(&block.heights) {
                *routes.entry(route).or_default() += 1;
                s.check(ht as i64 <= bound, || {
                    witness(a, p, block, chi, ht, format!("{ht} > {bound}")).with("route", route)
                });
            }
        }
    }
    s.note("routes", routes.into_iter().map(|(k, v)| (k.to_string(), Value::from(v))).collect::<serde_json::Map<_, _>>());
    if uncertified > 0 {
        s.note("uncertified_characters", uncertified);
    }
    Ok(s.finish(CheckId::ThmHt1I, a, primes))
}
