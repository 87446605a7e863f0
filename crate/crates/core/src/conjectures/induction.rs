//! Induced characters: the congruence for ψ^G, Brauer-type integer decompositions into
//! characters induced from linear ones, and monomial witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{skipped, Analysis, CheckId, CheckOptions, CheckReport, Scan, Status, Witness, NEEDS_GROUP};
use crate::arith::is_prime_power;
use crate::chartab::{character_table, induce, linear_characters, CharTable, ClassFunction};
use crate::cyclotomic::{CycInt, CycNum};
use crate::error::{Error, Result};
use crate::group::{aut_data_from_classes, Group, Subgroup};
use crate::lattice::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrauerTerm {
    /// Position in the subgroup list (up to conjugacy, ordered by order then bit set).
    pub subgroup: usize,
    pub subgroup_order: u64,
    pub generators: Vec<Vec<u32>>,
    /// λ on `generators`; it extends multiplicatively to the whole subgroup.
    pub lambda: Vec<CycInt>,
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrauerIndCertificate {
    pub character: usize,
    pub terms: Vec<BrauerTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialWitness {
    pub character: usize,
    pub subgroup: usize,
    pub subgroup_order: u64,
    pub generators: Vec<Vec<u32>>,
    pub lambda: Vec<CycInt>,
}

/// Outcome of the lattice search for one character.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BrauerOutcome {
    Found(BrauerIndCertificate),
    NotFound { character: usize, elementary_divisors: Vec<String> },
}

/// Rebuilds λ on all of ⟨gens⟩ from its generator values. None if λ is not well defined.
fn extend_linear(g: &Group, gens: &[usize], lambda: &[CycInt]) -> Option<(Subgroup, Vec<CycInt>)> {
    let h = Subgroup::generated(g, gens);
    let mut val: BTreeMap<usize, CycInt> = BTreeMap::new();
    val.insert(g.identity(), CycInt::one());
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (&s, l) in gens.iter().zip(lambda) {
            let y = g.mult(x, s);
            let v = val[&x].mul(l);
            match val.get(&y) {
                Some(w) if *w != v => return None,
                Some(_) => {}
                None => {
                    val.insert(y, v);
                    queue.push(y);
                }
            }
        }
    }
    let row = h.members().iter().map(|x| val[x].clone()).collect();
    Some((h, row))
}

fn gens_of(g: &Group, gens: &[Vec<u32>]) -> Option<Vec<usize>> {
    gens.iter().map(|p| g.index_of(p)).collect()
}

fn on_generators(h: &Subgroup, row: &[CycInt]) -> Vec<CycInt> {
    h.gens().iter().map(|x| row[h.members().binary_search(x).expect("generator lies in subgroup")].clone()).collect()
}

fn perms(g: &Group, xs: &[usize]) -> Vec<Vec<u32>> {
    xs.iter().map(|&x| g.perm(x).to_vec()).collect()
}

fn equals_character(t: &CharTable, f: &ClassFunction, chi: usize) -> bool {
    f.values.iter().zip(&t.characters[chi].values).all(|(a, b)| *a == CycNum::from(b.clone()))
}

impl BrauerIndCertificate {
    /// Σ aᵢ·λᵢ^G equals χ on every class, and χ(1) divides every |G:Hᵢ|.
    pub fn verify(&self, g: &Group, t: &CharTable) -> bool {
        let d = t.characters[self.character].degree();
        let mut sum = ClassFunction::zero(t.num_classes());
        for term in &self.terms {
            let Some(gens) = gens_of(g, &term.generators) else { return false };
            let Some((h, row)) = extend_linear(g, &gens, &term.lambda) else { return false };
            if h.order() != term.subgroup_order || (g.order() / h.order()) % d != 0 {
                return false;
            }
            sum = sum.add(&induce(g, &h, &row).scale(term.coefficient));
        }
        equals_character(t, &sum, self.character)
    }
}

impl MonomialWitness {
    pub fn verify(&self, g: &Group, t: &CharTable) -> bool {
        let Some(gens) = gens_of(g, &self.generators) else { return false };
        let Some((h, row)) = extend_linear(g, &gens, &self.lambda) else { return false };
        h.order() == self.subgroup_order && equals_character(t, &induce(g, &h, &row), self.character)
    }
}

/// Irreducible coordinates of an induced character; they are nonnegative integers.
fn coordinates(t: &CharTable, f: &ClassFunction) -> Result<Vec<i64>> {
    t.decompose(f)
        .into_iter()
        .map(|c| match c.as_rational() {
            Some((v, 1)) => Ok(v),
            _ => Err(Error::IntegralityViolation(format!("induced character coordinate {c}"))),
        })
        .collect()
}

struct Column {
    subgroup: usize,
    h: Subgroup,
    lambda: Vec<CycInt>,
    coords: Vec<i64>,
}

/// Searches for χ = Σ aᵢ·λᵢ^G with λᵢ linear on Hᵢ and χ(1) | |G:Hᵢ|.
pub fn brauer_ind_decompose(a: &Analysis, chi: usize, cap: u64) -> Result<BrauerOutcome> {
    let g = a.group.ok_or_else(|| Error::Schema(NEEDS_GROUP.into()))?;
    let t = a.table;
    let d = t.characters[chi].degree();
    let subgroups = a.subgroups(cap)?;
    let mut columns: Vec<Column> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (id, h) in subgroups.iter().enumerate() {
        if (g.order() / h.order()) % d != 0 {
            continue;
        }
        for row in linear_characters(g, h) {
            let coords = coordinates(t, &induce(g, h, &row))?;
            if seen.insert(coords.clone()) {
                columns.push(Column { subgroup: id, h: h.clone(), lambda: on_generators(h, &row), coords });
            }
        }
    }
    let r = t.num_classes();
    let target: Vec<i64> = (0..r).map(|i| i64::from(i == chi)).collect();
    let term = |c: &Column, coefficient: i64| BrauerTerm {
        subgroup: c.subgroup,
        subgroup_order: c.h.order(),
        generators: perms(g, c.h.gens()),
        lambda: c.lambda.clone(),
        coefficient,
    };
    // a single induced character hitting χ exactly is the cleanest certificate
    if let Some(c) = columns.iter().find(|c| c.coords == target) {
        return Ok(BrauerOutcome::Found(BrauerIndCertificate { character: chi, terms: vec![term(c, 1)] }));
    }
    let matrix: Vec<Vec<i64>> = (0..r).map(|i| columns.iter().map(|c| c.coords[i]).collect()).collect();
    if columns.is_empty() {
        return Ok(BrauerOutcome::NotFound { character: chi, elementary_divisors: Vec::new() });
    }
    let snf = smith_normal_form(&matrix)?;
    match snf.solve(&target)? {
        Some(x) => {
            let terms = columns.iter().zip(&x).filter(|(_, &v)| v != 0).map(|(c, &v)| term(c, v)).collect();
            Ok(BrauerOutcome::Found(BrauerIndCertificate { character: chi, terms }))
        }
        None => Ok(BrauerOutcome::NotFound {
            character: chi,
            elementary_divisors: snf.elementary_divisors().iter().map(i128::to_string).collect(),
        }),
    }
}

pub(super) fn brauer_ind(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let Some(g) = a.group else { return Ok(skipped(CheckId::BrauerInd, a, NEEDS_GROUP)) };
    if let Err(e @ Error::SearchCapExceeded { .. }) = a.subgroups(opts.subgroup_cap) {
        return Ok(skipped(CheckId::BrauerInd, a, &e.to_string()));
    }
    let solvable = a.is_solvable() == Some(true);
    let mut s = Scan::new(opts);
    let mut certificates = Vec::new();
    let mut not_found = Vec::new();
    for chi in 0..a.table.num_classes() {
        match brauer_ind_decompose(a, chi, opts.subgroup_cap)? {
            BrauerOutcome::Found(cert) => {
                let ok = cert.verify(g, a.table);
                s.check(ok, || Witness::new(Some(chi), None).with("broken", "certificate does not re-verify"));
                certificates.push(serde_json::to_value(&cert)?);
            }
            BrauerOutcome::NotFound { character, elementary_divisors } => {
                let entry = serde_json::json!({ "character": character, "elementary_divisors": elementary_divisors });
                if solvable {
                    s.check(false, || {
                        Witness::new(Some(chi), None)
                            .with("degree", a.degree(chi))
                            .with("group_order", a.order())
                            .with("broken", "no integer combination found for a solvable group")
                            .with("elementary_divisors", entry["elementary_divisors"].clone())
                    });
                } else {
                    s.checked += 1;
                }
                not_found.push(entry);
            }
        }
    }
    s.note("certificates", certificates);
    let open = !not_found.is_empty() && s.violations == 0;
    if !not_found.is_empty() {
        s.note("not_found", not_found.clone());
    }
    let status = if s.violations > 0 {
        Status::Fail
    } else if open {
        Status::Skipped(format!("no decomposition for {} character(s) of a nonsolvable group", not_found.len()))
    } else {
        Status::Pass
    };
    Ok(s.finish_with(CheckId::BrauerInd, a, Vec::new(), status))
}

/// Looks for H of order |G|/χ(1) and linear λ on H with λ^G = χ. Requires |G|/χ(1) to be a
/// prime power; returns Ok(None) if the search comes up empty.
pub fn monomial_witness(a: &Analysis, chi: usize, cap: u64) -> Result<Option<MonomialWitness>> {
    let g = a.group.ok_or_else(|| Error::Schema(NEEDS_GROUP.into()))?;
    let t = a.table;
    let index = t.order / t.characters[chi].degree();
    for (id, h) in a.subgroups(cap)?.iter().enumerate().filter(|(_, h)| h.order() == index) {
        for row in linear_characters(g, h) {
            if equals_character(t, &induce(g, h, &row), chi) {
                return Ok(Some(MonomialWitness {
                    character: chi,
                    subgroup: id,
                    subgroup_order: h.order(),
                    generators: perms(g, h.gens()),
                    lambda: on_generators(h, &row),
                }));
            }
        }
    }
    Ok(None)
}

pub(super) fn monomial(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let Some(g) = a.group else { return Ok(skipped(CheckId::MonomialPPowerIndex, a, NEEDS_GROUP)) };
    let t = a.table;
    let qualifying: Vec<usize> =
        (0..t.num_classes()).filter(|&chi| is_prime_power(t.order / t.characters[chi].degree()).is_some()).collect();
    if qualifying.is_empty() {
        return Ok(skipped(CheckId::MonomialPPowerIndex, a, "no character with prime-power index"));
    }
    if let Err(e @ Error::SearchCapExceeded { .. }) = a.subgroups(opts.subgroup_cap) {
        return Ok(skipped(CheckId::MonomialPPowerIndex, a, &e.to_string()));
    }
    let mut s = Scan::new(opts);
    let mut witnesses: Vec<Value> = Vec::new();
    for chi in qualifying {
        let found = monomial_witness(a, chi, opts.subgroup_cap)?;
        let ok = found.as_ref().is_some_and(|w| w.verify(g, t));
        s.check(ok, || {
            Witness::new(Some(chi), None)
                .with("degree", a.degree(chi))
                .with("group_order", a.order())
                .with("broken", "no linear character of a subgroup of index χ(1) induces χ")
        });
        if let Some(w) = found {
            witnesses.push(serde_json::to_value(&w)?);
        }
    }
    s.note("monomial_witnesses", witnesses);
    Ok(s.finish(CheckId::MonomialPPowerIndex, a, Vec::new()))
}

/// ω_θ for θ = ψ^G is divisible by |Aut⁰_G(g)| whenever ω_ψ is divisible by |Aut⁰_H(h)|
/// throughout H.
pub(super) fn induction_lemma(a: &Analysis, opts: &CheckOptions) -> Result<CheckReport> {
    let Some(g) = a.group else { return Ok(skipped(CheckId::InductionLemma, a, NEEDS_GROUP)) };
    let subgroups = match a.subgroups(opts.subgroup_cap) {
        Err(e @ Error::SearchCapExceeded { .. }) => return Ok(skipped(CheckId::InductionLemma, a, &e.to_string())),
        r => r?,
    };
    let t = a.table;
    let r = t.num_classes();
    let mut s = Scan::new(opts);
    let mut premise_unmet = 0u64;
    for (id, h) in subgroups.iter().enumerate() {
        let (sub, map) = h.to_group(g, &format!("{}/H{id}", g.name()))?;
        let th = character_table(&sub)?;
        let fusion: Vec<usize> = sub.classes().iter().map(|c| g.class_of(map[c.rep])).collect();
        let h_auts: Vec<_> = (0..th.num_classes()).map(|c| aut_data_from_classes(&th.classes, c)).collect();
        let back: std::collections::HashMap<usize, usize> = map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for psi in 0..th.num_classes() {
            let omega_h: Vec<CycInt> =
                (0..th.num_classes()).map(|c| th.central_character(psi, c)).collect::<Result<_>>()?;
            if !(0..th.num_classes()).all(|c| omega_h[c].divisible_by_int(h_auts[c].aut0_order)) {
                premise_unmet += 1;
                continue;
            }
            let row: Vec<CycInt> =
                h.members().iter().map(|x| th.characters[psi].values[sub.class_of(back[x])].clone()).collect();
            let theta = induce(g, h, &row);
            let theta1 = (g.order() / h.order() * th.characters[psi].degree()) as i64;
            for k in 0..r {
                let omega = theta.values[k].scale(t.classes[k].size as i64).div_int(theta1);
                let mut fused = CycNum::zero();
                for c in (0..th.num_classes()).filter(|&c| fusion[c] == k) {
                    fused = fused.add(&omega_h[c].clone().into());
                }
                let m = a.auts[k].aut0_order;
                let ok = omega == fused && omega.to_cycint().is_some_and(|w| w.divisible_by_int(m));
                s.check(ok, || {
                    Witness::new(None, Some(k))
                        .with("subgroup", id)
                        .with("subgroup_order", h.order())
                        .with("psi", psi)
                        .with("omega_theta", super::show(&omega))
                        .with("fused_sum", super::show(&fused))
                        .with("modulus", m)
                });
            }
        }
    }
    s.note("characters_without_premise", premise_unmet);
    Ok(s.finish(CheckId::InductionLemma, a, Vec::new()))
}
