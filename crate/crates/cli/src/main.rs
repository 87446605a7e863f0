use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use charcheck::batch::{run_batch, BatchOutcome, RunManifest};
use charcheck::blocks::blocks_with_defect_groups;
use charcheck::chartab::{character_table, CharTable};
use charcheck::conjectures::{parse_check_list, run_checks, Analysis, CheckOptions, CheckReport};
use charcheck::corpus::{corpus_entry, parse_cycles};
use charcheck::group::{build_group_capped, Group, GroupSpec, DEFAULT_SIZE_CAP, DEFAULT_SUBGROUP_CAP};
use charcheck::io::{import_table, TableCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "charcheck", version, about = "Exact character tables, p-blocks and divisibility checks")]
struct Cli {
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    /// Largest group order for subgroup searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: u64,
    /// Directory for cached character tables.
    #[arg(long, global = true, env = "CHARCHECK_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for batch runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 10)]
    witness_limit: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table of a group.
    Table { group: String },
    /// Print the p-blocks of a group.
    Blocks {
        group: String,
        #[arg(short)]
        p: u64,
    },
    /// Run checks on a group or on the whole built-in corpus.
    Check {
        /// A check id, a comma-separated list, or `all`.
        checks: String,
        /// A built-in name, `corpus`, a GroupSpec JSON file, or `perm:<degree>:<gen>;<gen>...`
        /// with generators in cycle notation.
        group: String,
        /// Write one report file per cell plus summary.json here.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Run a batch described by a manifest file.
    Report {
        manifest: PathBuf,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Validate an external table and run the checks that need only the table.
    Import {
        table: PathBuf,
        #[arg(long, default_value = "conj1,thm_main")]
        check: String,
    },
}

/// Resolves the group argument to a spec: a file, a built-in name, or inline cycles.
fn resolve_spec(arg: &str) -> Result<GroupSpec> {
    if let Some(rest) = arg.strip_prefix("perm:") {
        let (deg, gens) = rest.split_once(':').context("expected perm:<degree>:<generators>")?;
        let degree: usize = deg.trim().parse().context("bad degree")?;
        let gens = gens
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_cycles(degree, s))
            .collect::<charcheck::Result<Vec<_>>>()?;
        return Ok(GroupSpec::new(arg, degree, gens));
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let spec: GroupSpec = serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))?;
        spec.validate()?;
        return Ok(spec);
    }
    Ok(corpus_entry(arg)?.spec)
}

fn table_for(cli: &Cli, g: &Group) -> Result<CharTable> {
    Ok(match &cli.cache_dir {
        Some(dir) => TableCache::new(dir).table_for(g)?.0,
        None => character_table(g)?,
    })
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn print_table(t: &CharTable) {
    println!("{}  |G| = {}  e(G) = {}", t.name, t.order, t.exponent);
    let orders: Vec<String> = t.classes.iter().map(|c| c.elt_order.to_string()).collect();
    let sizes: Vec<String> = t.classes.iter().map(|c| c.size.to_string()).collect();
    println!("order  {}", orders.join("\t"));
    println!("size   {}", sizes.join("\t"));
    for (i, ch) in t.characters.iter().enumerate() {
        let vals: Vec<String> = ch.values.iter().map(|v| v.to_string()).collect();
        println!("χ{i:<5} {}", vals.join("\t"));
    }
}

fn print_reports(format: Format, reports: &[CheckReport]) -> Result<()> {
    match format {
        Format::Json => print_json(&reports),
        Format::Text => {
            for r in reports {
                println!(
                    "{:<12} {:<22} {:<8} cases={} violations={}",
                    r.group,
                    r.check,
                    r.status,
                    r.cases_checked,
                    r.violations
                );
                for w in &r.witnesses {
                    println!("    witness χ={:?} class={:?} {}", w.character, w.class, serde_json::to_string(&w.details)?);
                }
            }
            Ok(())
        }
    }
}

fn finish_batch(cli: &Cli, out: &BatchOutcome) -> Result<ExitCode> {
    match cli.format {
        Format::Json => print_json(&out.summary)?,
        Format::Text => {
            print_reports(Format::Text, &out.reports)?;
            let counts: Vec<String> = out.summary.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{} groups, {} cells: {}", out.summary.groups, out.summary.cells, counts.join(" "));
            for m in &out.summary.pin_mismatches {
                println!("pin mismatch: {m}");
            }
        }
    }
    Ok(ExitCode::from(out.summary.exit_code() as u8))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let opts = CheckOptions { witness_limit: cli.witness_limit, subgroup_cap: cli.subgroup_cap, primes: None };
    match &cli.command {
        Command::Table { group } => {
            let g = build_group_capped(resolve_spec(group)?, cli.size_cap)?;
            let t = table_for(cli, &g)?;
            match cli.format {
                Format::Json => print_json(&t)?,
                Format::Text => print_table(&t),
            }
        }
        Command::Blocks { group, p } => {
            let g = build_group_capped(resolve_spec(group)?, cli.size_cap)?;
            let t = table_for(cli, &g)?;
            let bd = blocks_with_defect_groups(&g, &t, *p)?;
            match cli.format {
                Format::Json => print_json(&bd)?,
                Format::Text => {
                    println!("{}  p = {}  |G|_p = {}^{}", t.name, p, p, bd.a);
                    for (i, b) in bd.blocks.iter().enumerate() {
                        let d = b.defect_group.as_ref();
                        println!(
                            "B{i}{}  defect {}  characters {:?}  heights {:?}  defect class {}  |D| = {}  e(Z(D)) = {}",
                            if b.is_principal { " (principal)" } else { "" },
                            b.defect,
                            b.characters,
                            b.heights,
                            b.defect_class,
                            d.map_or(0, |d| d.order),
                            d.map_or(0, |d| d.zd_exponent),
                        );
                    }
                }
            }
        }
        Command::Check { checks, group, output_dir } => {
            let ids = parse_check_list(checks)?;
            let mut m = RunManifest::new(Vec::new(), ids);
            if group == "corpus" || corpus_entry(group).is_ok() {
                m.groups.push(group.clone());
            } else {
                m.specs.push(resolve_spec(group)?);
            }
            apply_flags(cli, &mut m);
            m.output_dir = output_dir.clone();
            return finish_batch(cli, &run_batch(&m, cli.jobs)?);
        }
        Command::Report { manifest, output_dir } => {
            let text = std::fs::read_to_string(manifest).with_context(|| format!("reading {}", manifest.display()))?;
            let mut m = RunManifest::from_json(&text)?;
            apply_flags(cli, &mut m);
            if output_dir.is_some() {
                m.output_dir = output_dir.clone();
            }
            return finish_batch(cli, &run_batch(&m, cli.jobs)?);
        }
        Command::Import { table, check } => {
            let ids = parse_check_list(check)?;
            let t = import_table(table).with_context(|| format!("importing {}", table.display()))?;
            let a = Analysis::table_only(&t);
            let reports = run_checks(&ids, &a, &opts);
            print_reports(cli.format, &reports)?;
            let code = if reports.iter().any(|r| r.status.label() == "ERROR") {
                2
            } else if reports.iter().any(|r| r.status.label() == "FAIL") {
                1
            } else {
                0
            };
            return Ok(ExitCode::from(code));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Command-line caps and cache override the manifest; unset flags keep the manifest's values.
fn apply_flags(cli: &Cli, m: &mut RunManifest) {
    if cli.size_cap != DEFAULT_SIZE_CAP {
        m.size_cap = cli.size_cap;
    }
    if cli.subgroup_cap != DEFAULT_SUBGROUP_CAP {
        m.subgroup_cap = cli.subgroup_cap;
    }
    if cli.witness_limit != 10 {
        m.witness_limit = cli.witness_limit;
    }
    if cli.cache_dir.is_some() {
        m.cache_dir = cli.cache_dir.clone();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == Some(0) {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
