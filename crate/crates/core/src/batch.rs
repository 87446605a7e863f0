//! Batch runs over groups and checks, with deterministic report files.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{character_table, CharTable};
use crate::conjectures::{run_check, Analysis, CheckId, CheckOptions, CheckReport, Status};
use crate::corpus::{builtin_corpus, corpus_entry, CorpusEntry};
use crate::error::{Error, Result};
use crate::group::{build_group_capped, GroupSpec, DEFAULT_SIZE_CAP, DEFAULT_SUBGROUP_CAP};
use crate::io::{to_json_bytes, write_atomic, TableCache};

fn default_size_cap() -> usize {
    DEFAULT_SIZE_CAP
}

fn default_subgroup_cap() -> u64 {
    DEFAULT_SUBGROUP_CAP
}

fn default_witness_limit() -> usize {
    10
}

/// What a batch should run. `groups` holds built-in names, or `corpus` for all of them;
/// `specs` adds groups given inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(default)]
    pub groups: Vec<String>,
    #[serde(default)]
    pub specs: Vec<GroupSpec>,
    pub checks: Vec<CheckId>,
    #[serde(default)]
    pub primes: Option<Vec<u64>>,
    #[serde(default = "default_size_cap")]
    pub size_cap: usize,
    #[serde(default = "default_subgroup_cap")]
    pub subgroup_cap: u64,
    #[serde(default = "default_witness_limit")]
    pub witness_limit: usize,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

impl RunManifest {
    pub fn new(groups: Vec<String>, checks: Vec<CheckId>) -> Self {
        RunManifest {
            groups,
            specs: Vec::new(),
            checks,
            primes: None,
            size_cap: DEFAULT_SIZE_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            witness_limit: default_witness_limit(),
            output_dir: None,
            cache_dir: None,
        }
    }

    /// Reads a manifest; unknown check ids are rejected while parsing.
    pub fn from_json(text: &str) -> Result<Self> {
        let m: RunManifest = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        m.entries()?;
        Ok(m)
    }

    pub fn options(&self) -> CheckOptions {
        CheckOptions { witness_limit: self.witness_limit, subgroup_cap: self.subgroup_cap, primes: self.primes.clone() }
    }

    /// Resolved groups, in manifest order.
    pub fn entries(&self) -> Result<Vec<CorpusEntry>> {
        let mut out = Vec::new();
        for name in &self.groups {
            if name == "corpus" {
                out.extend(builtin_corpus());
            } else {
                out.push(corpus_entry(name)?);
            }
        }
        for s in &self.specs {
            s.validate()?;
            out.push(CorpusEntry { spec: s.clone(), expected: Default::default() });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub groups: usize,
    pub cells: usize,
    pub counts: BTreeMap<String, u64>,
    pub by_group: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pin_mismatches: Vec<String>,
}

impl Summary {
    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    /// 0 when everything passed or was skipped, 1 on any FAIL, 2 on any internal error.
    pub fn exit_code(&self) -> i32 {
        if self.count("ERROR") > 0 || !self.pin_mismatches.is_empty() {
            2
        } else if self.count("FAIL") > 0 {
            1
        } else {
            0
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatchOutcome {
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
    /// Groups whose table was read from the cache.
    pub cache_hits: Vec<String>,
}

fn error_report(check: CheckId, group: &str, msg: String) -> CheckReport {
    CheckReport {
        check: check.as_str().to_string(),
        group: group.to_string(),
        primes: Vec::new(),
        status: Status::Error(msg),
        cases_checked: 0,
        violations: 0,
        witnesses: Vec::new(),
        data: BTreeMap::new(),
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned()).unwrap_or_default()
}

struct GroupRun {
    reports: Vec<CheckReport>,
    pins: Vec<String>,
    cache_hit: bool,
}

fn run_group(entry: &CorpusEntry, m: &RunManifest, cache: Option<&TableCache>) -> GroupRun {
    let name = entry.name();
    let fail_all = |msg: String| GroupRun {
        reports: m.checks.iter().map(|&c| error_report(c, name, msg.clone())).collect(),
        pins: Vec::new(),
        cache_hit: false,
    };
    let g = match build_group_capped(entry.spec.clone(), m.size_cap) {
        Ok(g) => g,
        Err(e) => return fail_all(e.to_string()),
    };
    let table = panic::catch_unwind(AssertUnwindSafe(|| -> Result<(CharTable, bool)> {
        match cache {
            Some(c) => c.table_for(&g),
            None => character_table(&g).map(|t| (t, false)),
        }
    }));
    let (t, cache_hit) = match table {
        Ok(Ok(x)) => x,
        Ok(Err(e)) => return fail_all(e.to_string()),
        Err(p) => return fail_all(format!("table computation panicked: {}", panic_message(&p))),
    };
    let a = Analysis::new(&g, &t);
    let opts = m.options();
    let reports = m
        .checks
        .par_iter()
        .map(|&c| {
            // a panicking checker is a bug; report it as that cell's error instead of losing the batch
            panic::catch_unwind(AssertUnwindSafe(|| run_check(c, &a, &opts)))
                .unwrap_or_else(|p| error_report(c, name, format!("checker panicked: {}", panic_message(&p))))
        })
        .collect();
    GroupRun { reports, pins: entry.check_pins(&g, &t), cache_hit }
}

/// Runs every (group, check) cell. Cell failures become ERROR reports; only a bad manifest
/// or an unwritable output directory aborts.
pub fn run_batch(m: &RunManifest, jobs: Option<usize>) -> Result<BatchOutcome> {
    let entries = m.entries()?;
    let cache = m.cache_dir.as_ref().map(TableCache::new);
    let work = || -> Vec<GroupRun> { entries.par_iter().map(|e| run_group(e, m, cache.as_ref())).collect() };
    let runs = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Schema(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut summary = Summary { groups: entries.len(), ..Default::default() };
    let mut reports = Vec::new();
    let mut cache_hits = Vec::new();
    for (entry, run) in entries.iter().zip(runs) {
        if run.cache_hit {
            cache_hits.push(entry.name().to_string());
        }
        summary.pin_mismatches.extend(run.pins);
        let row = summary.by_group.entry(entry.name().to_string()).or_default();
        for r in run.reports {
            *summary.counts.entry(r.status.label().to_string()).or_default() += 1;
            row.insert(r.check.clone(), r.status.to_string());
            reports.push(r);
        }
    }
    summary.cells = reports.len();
    if let Some(dir) = &m.output_dir {
        write_reports(dir, &reports, &summary)?;
    }
    Ok(BatchOutcome { reports, summary, cache_hits })
}

/// Group names from inline specs may hold characters unsuited to paths.
pub fn dir_name(group: &str) -> String {
    group.chars().map(|c| if c.is_ascii_alphanumeric() || "_-.".contains(c) { c } else { '_' }).collect()
}

/// `<dir>/<group>/<check>.json` for each report, plus `<dir>/summary.json`.
pub fn write_reports(dir: &Path, reports: &[CheckReport], summary: &Summary) -> Result<()> {
    for r in reports {
        write_atomic(&dir.join(dir_name(&r.group)).join(format!("{}.json", r.check)), &to_json_bytes(r)?)?;
    }
    write_atomic(&dir.join("summary.json"), &to_json_bytes(summary)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_validation() {
        assert!(RunManifest::from_json(r#"{"groups":["S3"],"checks":["conj1"]}"#).is_ok());
        assert!(RunManifest::from_json(r#"{"groups":["S3"],"checks":["conj9"]}"#).is_err());
        assert!(RunManifest::from_json(r#"{"groups":["S9"],"checks":["conj1"]}"#).is_err());
    }

    #[test]
    fn small_batch() {
        let m = RunManifest::new(vec!["S3".into(), "Q8".into()], vec![CheckId::Conj1, CheckId::Conj2]);
        let out = run_batch(&m, Some(2)).unwrap();
        assert_eq!(out.summary.cells, 4);
        assert_eq!(out.summary.count("PASS"), 4);
        assert_eq!(out.summary.exit_code(), 0);
        assert_eq!(out.reports[0].group, "S3");
    }
}
