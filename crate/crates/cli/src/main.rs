//! `fri` — command-line front end for the fuzzy rare itemset miner.
//!
//! Subcommands: `mine` (run the miner and emit results), `fuzzify` (show the
//! transformed and revised databases), `check` (cross-check the miner
//! against the brute-force oracle), `bench` (sweep threshold settings into a
//! CSV), and `stats` (database summary). Exit codes: 0 success, 1 validation
//! or I/O error, 2 miner/oracle mismatch.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use fri_core::dataset::{demo_database, DatabaseStats, MembershipFunctionConfig, QuantitativeDatabase};
use fri_core::fuzzifier::{
    build_revised_database, revise_database, select_max_cardinality, term_supports,
    transform_database, FuzzyTransaction, RevisedDatabase,
};
use fri_core::miner::{
    mine, mine_revised, resolve_thresholds, ExtensionCheck, MiningParams, MiningResult,
};
use fri_core::oracle::{brute_force_mine, DEFAULT_ORACLE_CAP};
use fri_core::report::fmt_num;
use fri_core::synth::{random_band, random_database, rng_from_seed, RandomDbParams};

#[derive(Parser)]
#[command(
    name = "fri",
    version,
    about = "Mine fuzzy rare itemsets from quantitative transaction databases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print extra progress detail to standard error
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Mine the itemsets whose support falls in [min-rare, max-freq)
    Mine(MineArgs),
    /// Show the fuzzified and revised forms of a database
    Fuzzify(FuzzifyArgs),
    /// Cross-check the miner against the brute-force oracle
    Check(CheckArgs),
    /// Time threshold sweeps and emit one CSV row per setting
    Bench(BenchArgs),
    /// Summarize a database
    Stats(StatsArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Transaction database file (one `item:quantity ...` line per transaction)
    #[arg(long, value_name = "FILE", conflicts_with = "demo")]
    input: Option<PathBuf>,
    /// Membership function config (`term <label> <peak>` lines); built-in
    /// L/M/H peaks 1/6/11 when omitted
    #[arg(long, value_name = "FILE", conflicts_with = "demo")]
    membership: Option<PathBuf>,
    /// Use the built-in example database with the default membership config
    #[arg(long)]
    demo: bool,
}

#[derive(Args)]
struct BandArgs {
    /// Lower support edge, inclusive (fraction of the transaction count, or
    /// absolute with --absolute; `%` suffix allowed)
    #[arg(long, default_value = "0.25", value_parser = parse_threshold)]
    min_rare: f64,
    /// Upper support edge, exclusive (same encoding as --min-rare)
    #[arg(long, default_value = "0.5", value_parser = parse_threshold)]
    max_freq: f64,
    /// Read thresholds as absolute supports instead of fractions
    #[arg(long)]
    absolute: bool,
}

impl BandArgs {
    fn params(&self) -> MiningParams {
        if self.absolute {
            MiningParams::absolute(self.min_rare, self.max_freq)
        } else {
            MiningParams::relative(self.min_rare, self.max_freq)
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result here instead of standard output
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Result rendering
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    band: BandArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FuzzifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Lower support edge used for the revised view (same encoding as mine)
    #[arg(long, default_value = "0.25", value_parser = parse_threshold)]
    min_rare: f64,
    /// Read --min-rare as an absolute support instead of a fraction
    #[arg(long)]
    absolute: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    band: BandArgs,
    /// Check N random small databases instead of one input
    #[arg(long, value_name = "N", conflicts_with_all = ["input", "demo", "membership"])]
    random: Option<u64>,
    /// Seed for --random
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Threshold settings to sweep, each MIN:MAX (e.g. 2:4 or 25%:50%)
    #[arg(value_name = "MIN:MAX")]
    settings: Vec<String>,
    /// Read settings as absolute supports instead of fractions
    #[arg(long)]
    absolute: bool,
    /// Write the CSV here instead of standard output
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    output: OutputArgs,
}

/// Errors that decide the process exit code.
enum CliError {
    /// Bad arguments, unreadable files, malformed input: exit 1.
    Usage(String),
    /// Miner and oracle disagreed: exit 2.
    Mismatch(String),
}

impl From<fri_core::Error> for CliError {
    fn from(err: fri_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let verbose = cli.verbose;
    let outcome = match cli.command {
        Command::Mine(args) => cmd_mine(args, verbose),
        Command::Fuzzify(args) => cmd_fuzzify(args),
        Command::Check(args) => cmd_check(args, verbose),
        Command::Bench(args) => cmd_bench(args),
        Command::Stats(args) => cmd_stats(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CliError::Mismatch(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

/// Parses a threshold: a plain number, or a percentage like `25%`.
fn parse_threshold(raw: &str) -> Result<f64, String> {
    let trimmed = raw.trim();
    let (body, percent) = match trimmed.strip_suffix('%') {
        Some(body) => (body, true),
        None => (trimmed, false),
    };
    let value: f64 = body
        .parse()
        .map_err(|_| format!("`{raw}` is not a number"))?;
    let value = if percent { value / 100.0 } else { value };
    if value.is_nan() || value < 0.0 {
        return Err(format!("threshold `{raw}` must be non-negative"));
    }
    Ok(value)
}

/// Parses one bench setting of the form `MIN:MAX`.
fn parse_setting(raw: &str) -> Result<(f64, f64), CliError> {
    let (min_part, max_part) = raw.split_once(':').ok_or_else(|| {
        CliError::Usage(format!("setting `{raw}` must look like MIN:MAX, e.g. 2:4"))
    })?;
    let min_rare = parse_threshold(min_part)
        .map_err(|err| CliError::Usage(format!("setting `{raw}`: {err}")))?;
    let max_freq = parse_threshold(max_part)
        .map_err(|err| CliError::Usage(format!("setting `{raw}`: {err}")))?;
    Ok((min_rare, max_freq))
}

impl SourceArgs {
    /// Loads the database and membership config this run works on.
    fn load(&self) -> Result<(QuantitativeDatabase, MembershipFunctionConfig, String), CliError> {
        if self.demo {
            return Ok((demo_database(), MembershipFunctionConfig::default(), "demo".into()));
        }
        let Some(path) = &self.input else {
            return Err(CliError::Usage(
                "either --input <FILE> or --demo is required".into(),
            ));
        };
        let text = fs::read_to_string(path)
            .map_err(|err| CliError::Usage(format!("cannot read {}: {err}", path.display())))?;
        let db = QuantitativeDatabase::parse_str(&text)
            .map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))?;
        let config = match &self.membership {
            None => MembershipFunctionConfig::default(),
            Some(membership_path) => {
                let text = fs::read_to_string(membership_path).map_err(|err| {
                    CliError::Usage(format!("cannot read {}: {err}", membership_path.display()))
                })?;
                MembershipFunctionConfig::parse_str(&text).map_err(|err| {
                    CliError::Usage(format!("{}: {err}", membership_path.display()))
                })?
            }
        };
        let name = path
            .file_stem()
            .map(|stem| stem.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Ok((db, config, name))
    }
}

/// Writes a fully rendered artifact to the output path, or to stdout.
fn write_artifact(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|err| CliError::Usage(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_mine(args: MineArgs, verbose: u8) -> Result<(), CliError> {
    let (db, config, _) = args.source.load()?;
    let result = mine(&db, &config, &args.band.params())?;
    if verbose > 0 {
        let (min_rare_abs, max_freq_abs) = resolve_thresholds(&args.band.params(), db.len())?;
        eprintln!(
            "band [{}, {}) over {} transactions",
            fmt_num(min_rare_abs),
            fmt_num(max_freq_abs),
            db.len()
        );
    }
    let artifact = match args.output.format {
        Format::Text => result.to_text(),
        Format::Csv => result.to_csv(),
        Format::Json => result.to_json(),
    };
    write_artifact(args.output.output.as_deref(), &artifact)?;
    let stats = &result.stats;
    eprintln!("patterns: {}", result.fris.len());
    eprintln!("candidates: {}", stats.candidates);
    eprintln!("lists constructed: {}", stats.lists_constructed);
    eprintln!("joins pruned: {}", stats.joins_pruned);
    eprintln!("elapsed: {} ms", fmt_num(stats.elapsed.as_secs_f64() * 1e3));
    eprintln!("peak memory estimate: {} bytes", stats.peak_mem_estimate_bytes);
    Ok(())
}

/// Renders one fuzzified or revised row as `t<tid>: TERM:deg TERM:deg ...`.
fn row_line(tid: u32, pairs: &[(String, f64)]) -> String {
    let mut line = format!("t{tid}:");
    for (term, degree) in pairs {
        let _ = write!(line, " {term}:{}", fmt_num(*degree));
    }
    line
}

fn fuzzify_rows(transactions: &[FuzzyTransaction]) -> Vec<(u32, Vec<(String, f64)>)> {
    transactions
        .iter()
        .map(|txn| {
            let pairs = txn
                .memberships()
                .iter()
                .map(|(term, degree)| (term.to_string(), *degree))
                .collect();
            (txn.tid(), pairs)
        })
        .collect()
}

fn revised_rows(rdb: &RevisedDatabase) -> Vec<(u32, Vec<(String, f64)>)> {
    rdb.transactions()
        .iter()
        .map(|txn| {
            let pairs = txn
                .entries()
                .iter()
                .map(|&(rank, degree)| (rdb.terms()[rank].term.to_string(), degree))
                .collect();
            (txn.tid(), pairs)
        })
        .collect()
}

fn cmd_fuzzify(args: FuzzifyArgs) -> Result<(), CliError> {
    let (db, config, _) = args.source.load()?;
    let min_rare_abs = if args.absolute {
        args.min_rare
    } else {
        args.min_rare * db.len() as f64
    };
    let fuzzy = transform_database(&db, &config)?;
    let supports = term_supports(&fuzzy);
    let chosen = select_max_cardinality(&supports, &config);
    let rdb = build_revised_database(&fuzzy, &chosen, min_rare_abs);
    let transformed = fuzzify_rows(&fuzzy);
    let revised = revised_rows(&rdb);

    let artifact = match args.output.format {
        Format::Text => {
            let mut out = String::from("transformed:\n");
            for (tid, pairs) in &transformed {
                out.push_str(&row_line(*tid, pairs));
                out.push('\n');
            }
            let _ = writeln!(out, "revised (min-rare {}):", fmt_num(min_rare_abs));
            if rdb.is_empty() {
                out.push_str("no retained terms\n");
            } else {
                let order: Vec<String> =
                    rdb.terms().iter().map(|t| t.term.to_string()).collect();
                let _ = writeln!(out, "order: {}", order.join(" < "));
                for (tid, pairs) in &revised {
                    out.push_str(&row_line(*tid, pairs));
                    out.push('\n');
                }
            }
            out
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["section", "tid", "term", "degree"])
                .expect("writing to a Vec cannot fail");
            for (tid, pairs) in &transformed {
                for (term, degree) in pairs {
                    writer
                        .write_record(["transformed", &tid.to_string(), term, &fmt_num(*degree)])
                        .expect("writing to a Vec cannot fail");
                }
            }
            for (rank, retained) in rdb.terms().iter().enumerate() {
                writer
                    .write_record([
                        "order",
                        &rank.to_string(),
                        &retained.term.to_string(),
                        &fmt_num(retained.support),
                    ])
                    .expect("writing to a Vec cannot fail");
            }
            for (tid, pairs) in &revised {
                for (term, degree) in pairs {
                    writer
                        .write_record(["revised", &tid.to_string(), term, &fmt_num(*degree)])
                        .expect("writing to a Vec cannot fail");
                }
            }
            let bytes = writer.into_inner().expect("flushing a Vec cannot fail");
            String::from_utf8(bytes).expect("CSV output is UTF-8")
        }
        Format::Json => {
            let rows_json = |rows: &[(u32, Vec<(String, f64)>)]| -> serde_json::Value {
                rows.iter()
                    .map(|(tid, pairs)| {
                        let pairs: Vec<serde_json::Value> = pairs
                            .iter()
                            .map(|(term, degree)| {
                                serde_json::json!({ "term": term, "degree": degree })
                            })
                            .collect();
                        serde_json::json!({ "tid": tid, "entries": pairs })
                    })
                    .collect()
            };
            let order: Vec<serde_json::Value> = rdb
                .terms()
                .iter()
                .map(|retained| {
                    serde_json::json!({
                        "term": retained.term.to_string(),
                        "support": retained.support,
                    })
                })
                .collect();
            let value = serde_json::json!({
                "transformed": rows_json(&transformed),
                "order": order,
                "revised": rows_json(&revised),
            });
            let mut out =
                serde_json::to_string_pretty(&value).expect("dump serializes cleanly");
            out.push('\n');
            out
        }
    };
    write_artifact(args.output.output.as_deref(), &artifact)?;
    if rdb.is_empty() && args.output.format != Format::Text {
        eprintln!("no retained terms");
    }
    Ok(())
}

/// Canonical comparison lines for one mining result side.
fn result_pairs(result: &MiningResult, rdb: &RevisedDatabase) -> Vec<(Vec<usize>, f64)> {
    result
        .fris
        .iter()
        .map(|fri| {
            let ranks: Vec<usize> = fri
                .terms
                .iter()
                .map(|term| rdb.rank_of(term).expect("reported terms are retained"))
                .collect();
            (ranks, fri.support)
        })
        .collect()
}

/// Renders a minimal unified diff between miner and oracle itemsets, or None
/// when they agree (supports compared within 1e-9).
fn diff_results(
    miner: &[(Vec<usize>, f64)],
    oracle: &[(Vec<usize>, f64)],
    rdb: &RevisedDatabase,
) -> Option<String> {
    let render = |ranks: &[usize], support: f64| -> String {
        let terms: Vec<String> = rdb
            .resolve(ranks)
            .iter()
            .map(ToString::to_string)
            .collect();
        format!("{{{}}} {}", terms.join(","), fmt_num(support))
    };
    let key = |entry: &(Vec<usize>, f64)| (entry.0.len(), entry.0.clone());
    let mut lines = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < miner.len() || j < oracle.len() {
        match (miner.get(i), oracle.get(j)) {
            (Some(m), Some(o)) => match key(m).cmp(&key(o)) {
                std::cmp::Ordering::Less => {
                    lines.push(format!("-{}", render(&m.0, m.1)));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    lines.push(format!("+{}", render(&o.0, o.1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if (m.1 - o.1).abs() > 1e-9 {
                        lines.push(format!("-{}", render(&m.0, m.1)));
                        lines.push(format!("+{}", render(&o.0, o.1)));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(m), None) => {
                lines.push(format!("-{}", render(&m.0, m.1)));
                i += 1;
            }
            (None, Some(o)) => {
                lines.push(format!("+{}", render(&o.0, o.1)));
                j += 1;
            }
            (None, None) => unreachable!("loop condition covers both sides"),
        }
    }
    if lines.is_empty() {
        None
    } else {
        Some(format!("--- miner\n+++ oracle\n{}\n", lines.join("\n")))
    }
}

/// Compares miner variants and oracle on one revised database. Returns the
/// number of itemsets checked.
fn check_one(
    rdb: &RevisedDatabase,
    min_rare_abs: f64,
    max_freq_abs: f64,
    context: &str,
) -> Result<usize, CliError> {
    let mined = mine_revised(rdb, min_rare_abs, max_freq_abs, ExtensionCheck::MinIfRf);
    let oracle = brute_force_mine(rdb, min_rare_abs, max_freq_abs, DEFAULT_ORACLE_CAP)?;
    let miner_pairs = result_pairs(&mined, rdb);
    if let Some(diff) = diff_results(&miner_pairs, &oracle.fris, rdb) {
        print!("{diff}");
        return Err(CliError::Mismatch(format!(
            "miner and oracle disagree {context}"
        )));
    }
    for check in [ExtensionCheck::RfOnly, ExtensionCheck::Exhaustive] {
        let variant = mine_revised(rdb, min_rare_abs, max_freq_abs, check);
        let variant_pairs = result_pairs(&variant, rdb);
        if let Some(diff) = diff_results(&variant_pairs, &oracle.fris, rdb) {
            print!("{diff}");
            return Err(CliError::Mismatch(format!(
                "{check:?} search variant and oracle disagree {context}"
            )));
        }
    }
    Ok(mined.fris.len())
}

fn cmd_check(args: CheckArgs, verbose: u8) -> Result<(), CliError> {
    if let Some(instances) = args.random {
        let mut rng = rng_from_seed(args.seed);
        let params = RandomDbParams::default();
        let config = MembershipFunctionConfig::default();
        let mut checked = 0usize;
        for index in 0..instances {
            let db = random_database(&mut rng, &params);
            let (min_rare_abs, max_freq_abs) = random_band(&mut rng, db.len());
            let rdb = revise_database(&db, &config, min_rare_abs)?;
            let context = format!(
                "on random instance {index} (seed {}), band [{}, {}), database:\n{}",
                args.seed,
                fmt_num(min_rare_abs),
                fmt_num(max_freq_abs),
                db.to_text()
            );
            checked += check_one(&rdb, min_rare_abs, max_freq_abs, &context)?;
            if verbose > 0 && (index + 1) % 100 == 0 {
                eprintln!("checked {} instances", index + 1);
            }
        }
        eprintln!(
            "checked {instances} random instances (seed {}): miner and oracle agree on {checked} itemsets",
            args.seed
        );
        return Ok(());
    }
    let (db, config, name) = args.source.load()?;
    let (min_rare_abs, max_freq_abs) = resolve_thresholds(&args.band.params(), db.len())?;
    let rdb = revise_database(&db, &config, min_rare_abs)?;
    let context = format!("on {name}");
    let checked = check_one(&rdb, min_rare_abs, max_freq_abs, &context)?;
    eprintln!("miner and oracle agree on {checked} itemsets");
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    // Validate every setting before doing any work.
    let settings: Vec<(f64, f64)> = args
        .settings
        .iter()
        .map(|raw| parse_setting(raw))
        .collect::<Result<_, _>>()?;
    let parse_started = std::time::Instant::now();
    let (db, config, name) = args.source.load()?;
    eprintln!(
        "parsed {} transactions in {} ms",
        db.len(),
        fmt_num(parse_started.elapsed().as_secs_f64() * 1e3)
    );
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "dataset",
            "min_sup",
            "max_sup",
            "patterns",
            "elapsed_ms",
            "peak_mem_estimate",
        ])
        .expect("writing to a Vec cannot fail");
    for &(min_rare, max_freq) in &settings {
        let params = if args.absolute {
            MiningParams::absolute(min_rare, max_freq)
        } else {
            MiningParams::relative(min_rare, max_freq)
        };
        let result = mine(&db, &config, &params)?;
        writer
            .write_record([
                name.clone(),
                fmt_num(min_rare),
                fmt_num(max_freq),
                result.fris.len().to_string(),
                fmt_num(result.stats.elapsed.as_secs_f64() * 1e3),
                result.stats.peak_mem_estimate_bytes.to_string(),
            ])
            .expect("writing to a Vec cannot fail");
    }
    let bytes = writer.into_inner().expect("flushing a Vec cannot fail");
    let csv_text = String::from_utf8(bytes).expect("CSV output is UTF-8");
    write_artifact(args.output.as_deref(), &csv_text)
}

fn cmd_stats(args: StatsArgs) -> Result<(), CliError> {
    let (db, _, _) = args.source.load()?;
    let stats = db.stats();
    let artifact = match args.output.format {
        Format::Text => render_stats_text(&stats),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record([
                    "transactions",
                    "distinct_items",
                    "avg_transaction_len",
                    "max_quantity",
                ])
                .expect("writing to a Vec cannot fail");
            writer
                .write_record([
                    stats.transactions.to_string(),
                    stats.distinct_items.to_string(),
                    fmt_num(stats.avg_transaction_len),
                    fmt_num(stats.max_quantity),
                ])
                .expect("writing to a Vec cannot fail");
            let bytes = writer.into_inner().expect("flushing a Vec cannot fail");
            String::from_utf8(bytes).expect("CSV output is UTF-8")
        }
        Format::Json => {
            let mut out =
                serde_json::to_string_pretty(&stats).expect("stats serialize cleanly");
            out.push('\n');
            out
        }
    };
    write_artifact(args.output.output.as_deref(), &artifact)
}

fn render_stats_text(stats: &DatabaseStats) -> String {
    format!(
        "transactions: {}\ndistinct items: {}\navg transaction length: {}\nmax quantity: {}\n",
        stats.transactions,
        stats.distinct_items,
        fmt_num(stats.avg_transaction_len),
        fmt_num(stats.max_quantity)
    )
}
