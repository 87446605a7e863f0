use std::collections::BTreeMap;
use std::path::Path;

use charcheck::batch::{run_batch, RunManifest};
use charcheck::chartab::character_table;
use charcheck::conjectures::{conj1_holds, run_check, Analysis, CheckId, CheckOptions, Status};
use charcheck::corpus::corpus_entry;
use charcheck::group::{build_group, GroupSpec};

fn read_tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

#[test]
fn reruns_write_identical_files() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut m = RunManifest::new(vec!["S4".into(), "A5".into(), "Q8".into()], CheckId::ALL.to_vec());
    m.output_dir = Some(a.path().to_path_buf());
    run_batch(&m, Some(1)).unwrap();
    m.output_dir = Some(b.path().to_path_buf());
    run_batch(&m, Some(4)).unwrap();
    let (ta, tb) = (read_tree(a.path()), read_tree(b.path()));
    assert_eq!(ta.len(), 3 * CheckId::ALL.len() + 1);
    assert_eq!(ta, tb);
}

#[test]
fn warm_cache_gives_the_same_reports() {
    let cache = tempfile::tempdir().unwrap();
    let mut m = RunManifest::new(vec!["S4".into(), "SL2_3".into()], vec![CheckId::Conj1, CheckId::Conj2]);
    m.cache_dir = Some(cache.path().to_path_buf());
    let cold = run_batch(&m, None).unwrap();
    assert!(cold.cache_hits.is_empty());
    let warm = run_batch(&m, None).unwrap();
    assert_eq!(warm.cache_hits, vec!["S4".to_string(), "SL2_3".to_string()]);
    assert_eq!(serde_json::to_string(&cold.reports).unwrap(), serde_json::to_string(&warm.reports).unwrap());
}

#[test]
fn bad_cells_do_not_abort_the_batch() {
    let mut m = RunManifest::new(vec!["S3".into()], vec![CheckId::Conj1]);
    // order 720 exceeds the cap below
    m.specs.push(GroupSpec::new("S6", 6, vec![vec![1, 2, 3, 4, 5, 0], vec![1, 0, 2, 3, 4, 5]]));
    m.size_cap = 200;
    let out = run_batch(&m, None).unwrap();
    assert_eq!(out.summary.cells, 2);
    assert_eq!(out.summary.count("PASS"), 1);
    assert_eq!(out.summary.count("ERROR"), 1);
    assert_eq!(out.summary.exit_code(), 2);
}

#[test]
fn unknown_check_is_rejected_before_running() {
    assert!(RunManifest::from_json(r#"{"groups":["corpus"],"checks":["conj1","nope"]}"#).is_err());
}

#[test]
fn fail_witnesses_point_at_real_violations() {
    let g = build_group(corpus_entry("S3").unwrap().spec).unwrap();
    let mut t = character_table(&g).unwrap();
    // pretend |G| = 3: order-2 classes then break the linear characters and the
    // 3-cycles break the degree-2 character
    t.order = 3;
    let a = Analysis::table_only(&t);
    let r = run_check(CheckId::Conj1, &a, &CheckOptions::default());
    assert_eq!(r.status, Status::Fail);
    assert!(r.violations > 0);
    assert_eq!(r.witnesses.len() as u64, r.violations.min(10));
    let mut seen_degrees: Vec<u64> = Vec::new();
    for w in &r.witnesses {
        let (chi, class) = (w.character.unwrap(), w.class.unwrap());
        assert!(!conj1_holds(&t, chi, class));
        seen_degrees.push(t.characters[chi].degree());
    }
    assert!(seen_degrees.contains(&1) && seen_degrees.contains(&2));
}
