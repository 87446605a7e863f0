//! Cross-checks between the checkers: each entry is an implication the theory guarantees.

use serde::Serialize;

use super::divisibility::{conj1_at_p_holds, conj1_holds, conj2_at_p_holds, conj2_holds};
use super::induction::{brauer_ind_decompose, BrauerOutcome};
use super::{Analysis, CheckOptions};
use crate::arith::squarefree_part;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, Serialize)]
pub struct ImplicationWeb {
    /// Number of premises that held, per implication.
    pub premises: [u64; 6],
    /// Implications (a)–(f) whose premise was evaluated at all; (d) needs the group.
    pub evaluated: [bool; 6],
    pub failures: Vec<String>,
}

impl ImplicationWeb {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn main_holds(a: &Analysis, chi: usize, k: usize) -> bool {
    let t = a.table;
    let n = t.classes[k].elt_order as u128;
    let g = t.order as u128;
    let d = t.characters[chi].degree() as u128;
    let q = g / d;
    q * q % (n * squarefree_part(n as u64) as u128) == 0 && g * q * q % (n * n * n) == 0
}

/// Evaluates
/// (a) congruence for χ ⇒ order divisibility for χ,
/// (b) solvable ⇒ both hold everywhere,
/// (c) height zero at p ⇒ divisibility at p for χ,
/// (d) an induction certificate for χ ⇒ the congruence for χ at every p,
/// (e) abelian defect group ⇒ divisibility at p for the block's characters,
/// (f) order divisibility ⇒ both divisibilities of the main theorem.
pub fn implication_web(a: &Analysis, opts: &CheckOptions) -> Result<ImplicationWeb> {
    let t = a.table;
    let r = t.num_classes();
    let mut w = ImplicationWeb::default();
    let all_classes = |f: &dyn Fn(usize) -> Result<bool>| -> Result<bool> {
        for k in 0..r {
            if !f(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut c1 = Vec::with_capacity(r);
    let mut c2 = Vec::with_capacity(r);
    for chi in 0..r {
        c1.push(all_classes(&|k| Ok(conj1_holds(t, chi, k)))?);
        c2.push(all_classes(&|k| conj2_holds(a, chi, k))?);
    }

    w.evaluated[0] = true;
    for chi in 0..r {
        if c2[chi] {
            w.premises[0] += 1;
            if !c1[chi] {
                w.failures.push(format!("(a) χ{chi}: congruence holds but order divisibility fails"));
            }
        }
    }

    if let Some(solvable) = a.is_solvable() {
        w.evaluated[1] = true;
        if solvable {
            w.premises[1] += 1;
            for chi in 0..r {
                if !(c1[chi] && c2[chi]) {
                    w.failures.push(format!("(b) χ{chi}: solvable group but a conjecture fails"));
                }
            }
        }
    }

    let blocks = a.blocks()?;
    w.evaluated[2] = true;
    for (&p, bd) in blocks {
        for block in &bd.blocks {
            for (&chi, &ht) in block.characters.iter().zip(&block.heights) {
                let at_p = (0..r).all(|k| conj1_at_p_holds(t, chi, k, p));
                if ht == 0 {
                    w.premises[2] += 1;
                    if !at_p {
                        w.failures.push(format!("(c) χ{chi} p={p}: height zero but divisibility at p fails"));
                    }
                }
                if let Some(d) = &block.defect_group {
                    w.evaluated[4] = true;
                    if d.is_abelian {
                        w.premises[4] += 1;
                        if !at_p {
                            w.failures.push(format!("(e) χ{chi} p={p}: abelian defect group but divisibility at p fails"));
                        }
                    }
                }
            }
        }
    }

    if a.group.is_some() {
        match a.subgroups(opts.subgroup_cap) {
            Err(Error::SearchCapExceeded { .. }) => {}
            Err(e) => return Err(e),
            Ok(_) => {
                w.evaluated[3] = true;
                for chi in 0..r {
                    if let BrauerOutcome::Found(_) = brauer_ind_decompose(a, chi, opts.subgroup_cap)? {
                        w.premises[3] += 1;
                        for &p in blocks.keys() {
                            if !all_classes(&|k| conj2_at_p_holds(a, chi, k, p))? {
                                w.failures.push(format!("(d) χ{chi} p={p}: certificate exists but congruence at p fails"));
                            }
                        }
                    }
                }
            }
        }
    }

    w.evaluated[5] = true;
    for chi in 0..r {
        for k in 0..r {
            if !t.characters[chi].values[k].is_zero() && conj1_holds(t, chi, k) {
                w.premises[5] += 1;
                if !main_holds(a, chi, k) {
                    w.failures.push(format!("(f) χ{chi} class {k}: divisibility holds but main theorem fails"));
                }
            }
        }
    }
    Ok(w)
}
