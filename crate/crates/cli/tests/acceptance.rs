//! One line per acceptance criterion. Runs as a plain binary so the lines always show.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use charcheck::arith::{nu_p, prime_divisors};
use charcheck::batch::{run_batch, BatchOutcome, RunManifest};
use charcheck::blocks::{block_partition_all_classes, blocks_with_defect_groups};
use charcheck::chartab::{character_table, class_structure_constants, CharTable, ClassFunction};
use charcheck::conjectures::{
    brauer_ind_decompose, conj2_holds, implication_web, lemma2_basis_sweep, monomial_witness, tracelemma_sweep,
    Analysis, BrauerOutcome, CheckId, CheckOptions, CheckReport, Status,
};
use charcheck::corpus::{builtin_corpus, corpus_entry};
use charcheck::cyclotomic::{CycInt, CycNum};
use charcheck::group::{build_group, is_solvable, Group, DEFAULT_SUBGROUP_CAP};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(name: &str) -> (Group, CharTable) {
    let g = build_group(corpus_entry(name).unwrap().spec).unwrap();
    let t = character_table(&g).unwrap();
    (g, t)
}

fn corpus() -> Vec<(String, Group, CharTable)> {
    builtin_corpus()
        .into_iter()
        .map(|e| {
            let g = build_group(e.spec.clone()).unwrap();
            let t = character_table(&g).unwrap();
            (e.name().to_string(), g, t)
        })
        .collect()
}

fn corpus_batch(checks: &[CheckId]) -> BatchOutcome {
    run_batch(&RunManifest::new(vec!["corpus".into()], checks.to_vec()), None).unwrap()
}

fn all_pass(reports: &[CheckReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.status != Status::Pass) {
        Some(r) => Err(format!("{} {} is {} {:?}", r.group, r.check, r.status, r.witnesses)),
        None => Ok(()),
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn table_goldens() -> Outcome {
    let start = Instant::now();
    let names = ["C6", "S3", "D8", "Q8", "A4", "S4", "A5", "S5", "SL2_3"];
    for name in names {
        let (g, t) = load(name);
        let r = t.num_classes();
        let one = CycNum::from(CycInt::one());
        let rows: Vec<ClassFunction> = t.characters.iter().map(|c| c.to_class_function()).collect();
        for i in 0..r {
            for j in 0..r {
                let want = if i == j { one.clone() } else { CycNum::zero() };
                ensure!(t.inner_product(&rows[i], &rows[j]) == want, "{name}: rows {i}, {j}");
            }
        }
        for k in 0..r {
            for l in 0..r {
                let s = t.characters.iter().fold(CycInt::zero(), |s, c| s.add(&c.values[k].mul(&c.values[l].conj())));
                let want = if k == l { t.classes[k].centralizer_order as i64 } else { 0 };
                ensure!(s == CycInt::from_int(want), "{name}: columns {k}, {l}");
            }
        }
        ensure!(t.degrees().iter().map(|d| d * d).sum::<u64>() == g.order(), "{name}: degree squares");
        let a = class_structure_constants(&g);
        for chi in 0..r {
            let w: Vec<CycInt> = (0..r).map(|k| t.central_character(chi, k).unwrap()).collect();
            for i in 0..r {
                for j in 0..r {
                    let rhs = (0..r).fold(CycInt::zero(), |s, k| s.add(&w[k].scale(a[i][j][k] as i64)));
                    ensure!(w[i].mul(&w[j]) == rhs, "{name}: ω of χ{chi} on K{i}·K{j}");
                }
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} tables", names.len()))
}

fn s5_example() -> Outcome {
    let (g, t) = load("S5");
    // permutation character = number of fixed points
    let fixed = |c: usize| {
        let p = g.perm(g.classes()[c].rep);
        p.iter().enumerate().filter(|&(i, &x)| i == x as usize).count() as i64
    };
    let pi = ClassFunction { values: (0..t.num_classes()).map(|c| CycNum::from(CycInt::from_int(fixed(c)))).collect() };
    let chi = (0..t.characters.len())
        .find(|&c| t.characters[c].degree() == 4 && t.inner_product(&pi, &t.characters[c].to_class_function()) == CycNum::from(CycInt::one()))
        .ok_or("no degree-4 constituent")?;
    let k = (0..t.num_classes()).find(|&k| t.classes[k].elt_order == 5).ok_or("no 5-cycle class")?;
    let a = Analysis::new(&g, &t);
    let omega = t.central_character(chi, k).unwrap();
    ensure!(omega == CycInt::from_int(-6), "ω = {omega}");
    ensure!(a.auts[k].aut_order() == 4, "|Aut| = {}", a.auts[k].aut_order());
    ensure!(a.auts[k].aut0_order == 1, "|Aut⁰| = {}", a.auts[k].aut0_order);
    ensure!(conj2_holds(&a, chi, k).unwrap(), "conj2 fails");
    ensure!(!omega.divisible_by_int(a.auts[k].aut_order()), "naive divisibility holds");
    Ok("ω = -6, |Aut| = 4, |Aut⁰| = 1".into())
}

fn conj1_cli() -> Outcome {
    let start = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_charcheck"))
        .args(["--format", "json", "check", "conj1", "corpus"])
        .env_remove("CHARCHECK_CACHE_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.code() == Some(0), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    let n = builtin_corpus().len() as u64;
    ensure!(summary["groups"] == n, "groups = {}", summary["groups"]);
    ensure!(summary["counts"]["PASS"] == n, "counts = {}", summary["counts"]);
    ensure!(summary.get("pin_mismatches").is_none(), "pins {}", summary["pin_mismatches"]);
    within(start, Duration::from_secs(60))?;
    Ok(format!("{n} groups PASS"))
}

fn conj2_and_web() -> Outcome {
    let out = corpus_batch(&[CheckId::Conj2, CheckId::Conj2AtP]);
    all_pass(&out.reports)?;
    let opts = CheckOptions::default();
    let mut premises = 0;
    for (name, g, t) in corpus() {
        let web = implication_web(&Analysis::new(&g, &t), &opts).map_err(|e| format!("{name}: {e}"))?;
        ensure!(web.holds(), "{name}: {:?}", web.failures);
        premises += web.premises.iter().sum::<u64>();
    }
    Ok(format!("{} cells PASS, web holds over {premises} premises", out.reports.len()))
}

fn main_autineq_cubefree() -> Outcome {
    let out = corpus_batch(&[CheckId::ThmMainI, CheckId::ThmMainII, CheckId::ThmAutIneq, CheckId::CorCubefree]);
    all_pass(&out.reports)?;
    let mut fifth_free = 0;
    for e in builtin_corpus() {
        let order = build_group(e.spec.clone()).unwrap().order();
        if prime_divisors(order).iter().any(|&p| nu_p(order, p) >= 5) {
            continue;
        }
        fifth_free += 1;
        let r = out.reports.iter().find(|r| r.group == e.name() && r.check == "cor_cubefree").unwrap();
        ensure!(r.data.get("triggered") == Some(&serde_json::json!(0)), "{}: triggered {:?}", e.name(), r.data.get("triggered"));
    }
    Ok(format!("{} cells PASS, clause untriggered on {fifth_free} groups", out.reports.len()))
}

fn blocks() -> Outcome {
    let mut cases = 0;
    for (name, g, t) in corpus() {
        for p in prime_divisors(g.order()) {
            let bd = blocks_with_defect_groups(&g, &t, p).map_err(|e| format!("{name} p={p}: {e}"))?;
            let norm = |mut v: Vec<Vec<usize>>| {
                v.iter_mut().for_each(|b| b.sort_unstable());
                v.sort();
                v
            };
            ensure!(norm(bd.partition()) == norm(block_partition_all_classes(&t, p).unwrap()), "{name} p={p}: partitions differ");
            for b in &bd.blocks {
                let d = b.defect_group.as_ref().unwrap();
                ensure!(d.order == p.pow(b.defect), "{name} p={p}: |D| = {} but d = {}", d.order, b.defect);
                ensure!(b.heights.contains(&0), "{name} p={p}: no height-zero character");
                if b.is_principal {
                    ensure!(d.order == p.pow(bd.a), "{name} p={p}: principal |D| = {}", d.order);
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (group, p) pairs"))
}

fn heights() -> Outcome {
    let out = corpus_batch(&[CheckId::ThmHt1I, CheckId::ThmHt1II]);
    let mut routed = 0;
    for r in &out.reports {
        match (&r.status, r.check.as_str()) {
            (Status::Pass, "thm_ht1_i") => {
                routed += r.data.get("routes").and_then(|v| v.as_object()).map_or(0, |m| m.values().filter_map(|v| v.as_u64()).sum::<u64>());
            }
            (Status::Pass, _) => {}
            _ => return Err(format!("{} {} is {}", r.group, r.check, r.status)),
        }
    }
    ensure!(routed > 0, "no route certified anywhere");

    let (g, t) = load("S4");
    let bd = blocks_with_defect_groups(&g, &t, 2).unwrap();
    let mut golden: Vec<(u64, u32)> = Vec::new();
    for b in &bd.blocks {
        let d = b.defect_group.as_ref().unwrap();
        let bound = b.defect - nu_p(d.zd_exponent, 2);
        ensure!(bound == 2, "S4 bound = {bound}");
        for (&chi, &h) in b.characters.iter().zip(&b.heights) {
            ensure!(h <= bound, "S4 χ{chi} height {h}");
            golden.push((t.characters[chi].degree(), h));
        }
    }
    golden.sort();
    ensure!(golden == [(1, 0), (1, 0), (2, 1), (3, 0), (3, 0)], "S4 heights {golden:?}");
    Ok(format!("{} cells PASS, {routed} routed assertions, S4 heights ≤ 2", out.reports.len()))
}

fn trace_sweeps() -> Outcome {
    let l2 = lemma2_basis_sweep(60).map_err(|e| e.to_string())?;
    let tl = tracelemma_sweep(64).map_err(|e| e.to_string())?;
    ensure!(l2.cases > 0 && tl.cases > 0, "empty sweep");
    ensure!(l2.failures.is_empty(), "lemma 2: {:?}", l2.failures);
    ensure!(tl.failures.is_empty(), "tower lemma: {:?}", tl.failures);
    Ok(format!("{} basis cases, {} tower cases", l2.cases, tl.cases))
}

fn lemma1() -> Outcome {
    let mut cases = 0;
    for (name, g, t) in corpus() {
        for p in prime_divisors(g.order()) {
            for x in (0..t.num_classes()).filter(|&x| t.classes[x].elt_order == charcheck::arith::p_part(t.classes[x].elt_order, p)) {
                for chi in 0..t.characters.len() {
                    let v = t.section_indicator_pairing(chi, x, p).map_err(|e| e.to_string())?;
                    ensure!(matches!(v.as_rational(), Some((_, 1))), "{name} p={p} x={x} χ{chi}: {v}");
                    cases += 1;
                }
            }
        }
    }
    all_pass(&corpus_batch(&[CheckId::Lemma1Integrality]).reports)?;
    Ok(format!("{cases} pairings integral"))
}

fn induction() -> Outcome {
    let start = Instant::now();
    let (mut certs, mut monos) = (0, 0);
    for (name, g, t) in corpus() {
        let a = Analysis::new(&g, &t);
        if is_solvable(&g) {
            for chi in 0..t.characters.len() {
                match brauer_ind_decompose(&a, chi, DEFAULT_SUBGROUP_CAP).map_err(|e| format!("{name}: {e}"))? {
                    BrauerOutcome::Found(c) => ensure!(c.verify(&g, &t), "{name} χ{chi}: certificate does not verify"),
                    BrauerOutcome::NotFound { .. } => return Err(format!("{name} χ{chi}: no certificate")),
                }
                certs += 1;
            }
        }
        for chi in 0..t.characters.len() {
            let index = g.order() / t.characters[chi].degree();
            if prime_divisors(index).len() != 1 {
                continue;
            }
            let w = monomial_witness(&a, chi, DEFAULT_SUBGROUP_CAP)
                .map_err(|e| format!("{name}: {e}"))?
                .ok_or_else(|| format!("{name} χ{chi}: no monomial witness"))?;
            ensure!(w.verify(&g, &t), "{name} χ{chi}: witness does not verify");
            monos += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{certs} certificates, {monos} monomial witnesses"))
}

fn perm1() -> Outcome {
    let names = ["S5", "A5", "F20", "PSL2_7"];
    let m = RunManifest::new(names.iter().map(|s| s.to_string()).collect(), vec![CheckId::Perm1Strong]);
    let out = run_batch(&m, None).unwrap();
    all_pass(&out.reports)?;
    ensure!(out.reports.iter().all(|r| r.cases_checked > 0), "a group had no cases");
    Ok(names.join(", "))
}

fn read_tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(root).unwrap().display().to_string(), std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let o = Command::new(env!("CARGO_BIN_EXE_charcheck"))
            .args(["check", "all", "corpus", "--output-dir"])
            .arg(d.path())
            .env_remove("CHARCHECK_CACHE_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(o.status.code() == Some(0), "exit {:?}", o.status.code());
    }
    let (a, b) = (read_tree(dirs[0].path()), read_tree(dirs[1].path()));
    ensure!(a.len() == builtin_corpus().len() * CheckId::ALL.len() + 1, "{} files", a.len());
    if let Some(k) = a.keys().find(|k| a.get(*k) != b.get(*k)) {
        return Err(format!("{k} differs"));
    }
    Ok(format!("{} files identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("table goldens", table_goldens),
        ("S5 central character example", s5_example),
        ("conj1 over the corpus via the CLI", conj1_cli),
        ("conj2 batch and implication web", conj2_and_web),
        ("main theorem, Aut inequality, cubefree corollary", main_autineq_cubefree),
        ("block partitions and defect groups", blocks),
        ("height bounds", heights),
        ("trace lemma sweeps", trace_sweeps),
        ("section pairing integrality", lemma1),
        ("Brauer induction and monomial witnesses", induction),
        ("doubly transitive divisibility", perm1),
        ("determinism of batch output", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
