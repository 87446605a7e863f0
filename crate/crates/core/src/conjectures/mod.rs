//! Executable checkers for the divisibility statements, each producing a [`CheckReport`].

mod divisibility;
mod heights;
mod induction;
mod special;
mod traces;
mod web;

pub use divisibility::{conj1_at_p_holds, conj1_holds, conj2_at_p_holds, conj2_holds};
pub use induction::{
    brauer_ind_decompose, monomial_witness, BrauerIndCertificate, BrauerOutcome, BrauerTerm, MonomialWitness,
};
pub use traces::{lemma2_basis_sweep, tracelemma_sweep, TraceSweep};
pub use web::{implication_web, ImplicationWeb};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::prime_divisors;
use crate::blocks::{block_partition, blocks_with_defect_groups, BlockData};
use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::group::{aut_data_from_classes, subgroups_up_to_conjugacy, AutData, Group, Subgroup, DEFAULT_SUBGROUP_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
    Error(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIPPED",
            Status::Error(_) => "ERROR",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Skipped(r) | Status::Error(r) => write!(f, "{}({r})", self.label()),
            _ => f.write_str(self.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    pub details: BTreeMap<String, Value>,
}

impl Witness {
    pub fn new(character: Option<usize>, class: Option<usize>) -> Self {
        Witness { character, class, details: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), v.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub group: String,
    pub primes: Vec<u64>,
    #[serde(flatten)]
    pub status: Status,
    pub cases_checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
}

macro_rules! check_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId { $($variant),* }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(CheckId::$variant => $name),* }
            }
        }

        impl FromStr for CheckId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(CheckId::$variant),)*
                    _ => Err(Error::UnknownCheck(s.to_string())),
                }
            }
        }
    };
}

check_ids! {
    Conj1 => "conj1",
    Conj1AtP => "conj1_at_p",
    ThmMainI => "thm_main_i",
    ThmMainII => "thm_main_ii",
    CorCubefree => "cor_cubefree",
    ThmAutIneq => "thm_autineq",
    Conj2 => "conj2",
    Conj2AtP => "conj2_at_p",
    ThmRationalBound => "thm_rational_bound",
    ThmHt1I => "thm_ht1_i",
    ThmHt1II => "thm_ht1_ii",
    Lemma1Integrality => "lemma1_integrality",
    Lemma2Trace => "lemma2_trace",
    TraceLemma => "tracelemma",
    InductionLemma => "induction_lemma",
    Perm1Strong => "perm1_strong",
    OddPPowerVanishing => "odd_ppower_vanishing",
    BrauerInd => "brauer_ind",
    MonomialPPowerIndex => "monomial_ppower_index",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `all` or a comma-separated list of ids; `thm_main` stands for both of its parts.
pub fn parse_check_list(s: &str) -> Result<Vec<CheckId>> {
    if s.trim() == "all" {
        return Ok(CheckId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for x in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let ids = match x {
            "thm_main" => vec![CheckId::ThmMainI, CheckId::ThmMainII],
            _ => vec![x.parse()?],
        };
        for id in ids {
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::UnknownCheck(s.to_string()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub witness_limit: usize,
    pub subgroup_cap: u64,
    /// Restrict prime-indexed checks to these primes; all prime divisors of |G| otherwise.
    pub primes: Option<Vec<u64>>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { witness_limit: 10, subgroup_cap: DEFAULT_SUBGROUP_CAP, primes: None }
    }
}

/// A character table with everything the checkers share, computed once.
pub struct Analysis<'a> {
    pub group: Option<&'a Group>,
    pub table: &'a CharTable,
    pub auts: Vec<AutData>,
    blocks: OnceLock<Result<BTreeMap<u64, BlockData>, String>>,
    solvable: OnceLock<Option<bool>>,
    subgroups: OnceLock<(u64, Vec<Subgroup>)>,
}

impl<'a> Analysis<'a> {
    pub fn new(group: &'a Group, table: &'a CharTable) -> Self {
        Self::build(Some(group), table)
    }

    /// For imported tables: group-dependent checks report SKIPPED.
    pub fn table_only(table: &'a CharTable) -> Self {
        Self::build(None, table)
    }

    fn build(group: Option<&'a Group>, table: &'a CharTable) -> Self {
        let auts = (0..table.num_classes()).map(|c| aut_data_from_classes(&table.classes, c)).collect();
        Analysis { group, table, auts, blocks: OnceLock::new(), solvable: OnceLock::new(), subgroups: OnceLock::new() }
    }

    pub fn name(&self) -> &str {
        &self.table.name
    }

    pub fn order(&self) -> u64 {
        self.table.order
    }

    pub fn primes(&self, opts: &CheckOptions) -> Vec<u64> {
        let all = prime_divisors(self.order());
        match &opts.primes {
            Some(sel) => all.into_iter().filter(|p| sel.contains(p)).collect(),
            None => all,
        }
    }

    pub fn is_solvable(&self) -> Option<bool> {
        *self.solvable.get_or_init(|| self.group.map(Group::is_solvable))
    }

    /// Blocks for every prime divisor of |G|, with defect groups when the group is known.
    pub fn blocks(&self) -> Result<&BTreeMap<u64, BlockData>> {
        self.blocks
            .get_or_init(|| {
                prime_divisors(self.order())
                    .into_iter()
                    .map(|p| {
                        let bd = match self.group {
                            Some(g) => blocks_with_defect_groups(g, self.table, p),
                            None => block_partition(self.table, p),
                        };
                        bd.map(|b| (p, b)).map_err(|e| e.to_string())
                    })
                    .collect()
            })
            .as_ref()
            .map_err(|e| Error::LiftFailure(e.clone()))
    }

    /// Subgroups up to conjugacy, in the order used for subgroup ids. The list is kept for
    /// the first cap asked for; other caps recompute.
    pub fn subgroups(&self, cap: u64) -> Result<Vec<Subgroup>> {
        let g = self.group.ok_or_else(|| Error::Schema(NEEDS_GROUP.into()))?;
        if g.order() > cap {
            return Err(Error::SearchCapExceeded { order: g.order(), cap });
        }
        let (c, cached) = self.subgroups.get_or_init(|| (cap, subgroups_up_to_conjugacy(g, 1, cap).unwrap_or_default()));
        if *c == cap {
            Ok(cached.clone())
        } else {
            subgroups_up_to_conjugacy(g, 1, cap)
        }
    }

    pub fn chi_nonzero(&self, chi: usize, k: usize) -> bool {
        !self.table.characters[chi].values[k].is_zero()
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.table.characters[chi].degree()
    }
}

/// Running tally for a scan: counts cases, keeps the first few violations.
pub(crate) struct Scan {
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    pub data: BTreeMap<String, Value>,
    limit: usize,
}

impl Scan {
    pub fn new(opts: &CheckOptions) -> Self {
        Scan { checked: 0, violations: 0, witnesses: Vec::new(), data: BTreeMap::new(), limit: opts.witness_limit }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < self.limit {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn note(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn finish(self, id: CheckId, a: &Analysis, primes: Vec<u64>) -> CheckReport {
        let status = if self.violations > 0 { Status::Fail } else { Status::Pass };
        self.finish_with(id, a, primes, status)
    }

    pub fn finish_with(self, id: CheckId, a: &Analysis, primes: Vec<u64>, status: Status) -> CheckReport {
        CheckReport {
            check: id.as_str().to_string(),
            group: a.name().to_string(),
            primes,
            status,
            cases_checked: self.checked,
            violations: self.violations,
            witnesses: self.witnesses,
            data: self.data,
        }
    }
}

pub(crate) fn skipped(id: CheckId, a: &Analysis, reason: &str) -> CheckReport {
    Scan::new(&CheckOptions::default()).finish_with(id, a, Vec::new(), Status::Skipped(reason.to_string()))
}

pub(crate) const NEEDS_GROUP: &str = "needs group";

pub fn run_check(id: CheckId, a: &Analysis, opts: &CheckOptions) -> CheckReport {
    use CheckId::*;
    let result = match id {
        Conj1 => divisibility::conj1(a, opts),
        Conj1AtP => divisibility::conj1_at_p(a, opts),
        ThmMainI => divisibility::thm_main_i(a, opts),
        ThmMainII => divisibility::thm_main_ii(a, opts),
        CorCubefree => divisibility::cor_cubefree(a, opts),
        ThmAutIneq => divisibility::autineq(a, opts),
        Conj2 => divisibility::conj2(a, opts),
        Conj2AtP => divisibility::conj2_at_p(a, opts),
        ThmRationalBound => divisibility::rational_bound(a, opts),
        ThmHt1I => heights::ht1_i(a, opts),
        ThmHt1II => heights::ht1_ii(a, opts),
        Lemma1Integrality => traces::lemma1(a, opts),
        Lemma2Trace => traces::lemma2(a, opts),
        TraceLemma => traces::tracelemma(a, opts),
        InductionLemma => induction::induction_lemma(a, opts),
        Perm1Strong => special::perm1(a, opts),
        OddPPowerVanishing => special::odd_ppower_vanishing(a, opts),
        BrauerInd => induction::brauer_ind(a, opts),
        MonomialPPowerIndex => induction::monomial(a, opts),
    };
    result.unwrap_or_else(|e| {
        Scan::new(opts).finish_with(id, a, Vec::new(), Status::Error(e.to_string()))
    })
}

pub fn run_checks(ids: &[CheckId], a: &Analysis, opts: &CheckOptions) -> Vec<CheckReport> {
    ids.iter().map(|&id| run_check(id, a, opts)).collect()
}

/// Value rendering used in witness details.
pub(crate) fn show(x: &impl fmt::Display) -> Value {
    Value::String(x.to_string())
}
