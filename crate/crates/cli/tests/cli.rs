//! End-to-end tests that drive the `fri` binary as a subprocess.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fri_core::dataset::DEMO_DATABASE_TEXT;
use fri_core::synth::{retail_like_database, RetailLikeParams};

fn fri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fri"))
        .args(args)
        .output()
        .expect("the fri binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        stderr_of(output)
    );
}

#[test]
fn mine_demo_reports_the_handworked_itemsets() {
    let output = fri(&[
        "mine", "--demo", "--min-rare", "2", "--max-freq", "4", "--absolute", "--format", "json",
    ]);
    assert_success(&output);
    let value: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("mine emits valid JSON");
    let itemsets = value["itemsets"].as_array().expect("itemsets array");
    assert_eq!(itemsets.len(), 7);
    let pair = itemsets
        .iter()
        .find(|entry| entry["terms"] == serde_json::json!(["A.L", "D.H"]))
        .expect("the (A.L, D.H) itemset is reported");
    assert_eq!(pair["support"].as_f64(), Some(2.0));
    assert_eq!(pair["kind"], "mixed");
    assert_eq!(value["stats"]["patterns"], 7);
    assert_eq!(value["stats"]["candidates"], 11);
    assert_eq!(value["stats"]["lists_constructed"], 7);
    assert_eq!(value["stats"]["joins_pruned"], 3);
    let summary = stderr_of(&output);
    assert!(summary.contains("patterns: 7"), "stderr: {summary}");
    assert!(summary.contains("joins pruned: 3"), "stderr: {summary}");
}

#[test]
fn mine_rejects_inverted_thresholds() {
    let output = fri(&[
        "mine", "--demo", "--min-rare", "4", "--max-freq", "2", "--absolute",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let message = stderr_of(&output);
    assert!(message.contains("threshold inversion"), "stderr: {message}");
    assert!(stdout_of(&output).is_empty(), "no partial output on error");
}

#[test]
fn mine_defaults_are_relative_quarter_and_half() {
    let defaulted = fri(&["mine", "--demo"]);
    let explicit = fri(&["mine", "--demo", "--min-rare", "25%", "--max-freq", "50%"]);
    assert_success(&defaulted);
    assert_success(&explicit);
    assert_eq!(stdout_of(&defaulted), stdout_of(&explicit));
    // 0.25 and 0.5 of 8 transactions resolve to the hand-worked [2, 4) band.
    let absolute = fri(&[
        "mine", "--demo", "--min-rare", "2", "--max-freq", "4", "--absolute",
    ]);
    assert_eq!(stdout_of(&defaulted), stdout_of(&absolute));

    let json = fri(&["mine", "--demo", "--format", "json"]);
    assert_success(&json);
    let value: serde_json::Value =
        serde_json::from_str(&stdout_of(&json)).expect("mine emits valid JSON");
    let pair = value["itemsets"]
        .as_array()
        .expect("itemsets array")
        .iter()
        .find(|entry| entry["terms"] == serde_json::json!(["A.L", "D.H"]))
        .expect("defaults report the (A.L, D.H) itemset");
    assert_eq!(pair["support"].as_f64(), Some(2.0));
}

#[test]
fn mine_writes_byte_identical_artifacts_across_runs() {
    let dir = tempfile::tempdir().expect("temp dir");
    for format in ["text", "csv"] {
        let first = dir.path().join(format!("first.{format}"));
        let second = dir.path().join(format!("second.{format}"));
        for path in [&first, &second] {
            let output = fri(&[
                "mine",
                "--demo",
                "--format",
                format,
                "--output",
                path.to_str().unwrap(),
            ]);
            assert_success(&output);
        }
        let first_bytes = fs::read(&first).expect("first artifact");
        let second_bytes = fs::read(&second).expect("second artifact");
        assert_eq!(first_bytes, second_bytes, "{format} artifacts differ");
        assert!(!first_bytes.is_empty());
    }
}

#[test]
fn mine_reads_database_and_membership_files() {
    let dir = tempfile::tempdir().expect("temp dir");
    let db_path = dir.path().join("orders.txt");
    let membership_path = dir.path().join("terms.cfg");
    fs::write(&db_path, DEMO_DATABASE_TEXT).expect("write database");
    fs::write(&membership_path, "term L 1\nterm M 6\nterm H 11\n").expect("write config");
    let from_files = fri(&[
        "mine",
        "--input",
        db_path.to_str().unwrap(),
        "--membership",
        membership_path.to_str().unwrap(),
        "--min-rare",
        "2",
        "--max-freq",
        "4",
        "--absolute",
    ]);
    assert_success(&from_files);
    let from_demo = fri(&[
        "mine", "--demo", "--min-rare", "2", "--max-freq", "4", "--absolute",
    ]);
    assert_eq!(stdout_of(&from_files), stdout_of(&from_demo));
}

#[test]
fn mine_handles_a_retail_like_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let db_path = dir.path().join("retail.txt");
    let params = RetailLikeParams {
        transactions: 2_000,
        items: 300,
        mean_length: 8.0,
        max_quantity: 31,
    };
    let db = retail_like_database(99, &params);
    fs::write(&db_path, db.to_text()).expect("write database");
    let output = fri(&[
        "mine",
        "--input",
        db_path.to_str().unwrap(),
        "--min-rare",
        "95",
        "--max-freq",
        "200",
        "--absolute",
        "--format",
        "csv",
    ]);
    assert_success(&output);
    let stdout = stdout_of(&output);
    let rows = stdout.lines().count() - 1;
    assert_eq!(rows, 9, "pattern count drifted\n{stdout}");

    // A band low enough to retain hundreds of terms is out of the oracle's
    // reach: check must refuse it instead of enumerating 2^289 subsets.
    let over_cap = fri(&[
        "check",
        "--input",
        db_path.to_str().unwrap(),
        "--min-rare",
        "5",
        "--max-freq",
        "50",
        "--absolute",
    ]);
    assert_eq!(over_cap.status.code(), Some(1));
    assert!(
        stderr_of(&over_cap).contains("exceed the oracle cap"),
        "stderr: {}",
        stderr_of(&over_cap)
    );
}

#[test]
fn fuzzify_demo_shows_transformed_and_revised_rows() {
    let output = fri(&["fuzzify", "--demo", "--min-rare", "2", "--absolute"]);
    assert_success(&output);
    let text = stdout_of(&output);
    assert!(
        text.contains("t2: B.M:0.6 B.H:0.4 D.L:0.6 D.M:0.4"),
        "transformed row for t2 missing:\n{text}"
    );
    assert!(text.contains("order: C.L < A.L < D.H < B.M"), "{text}");
    let revised = text
        .split("revised (min-rare 2):")
        .nth(1)
        .expect("revised section present");
    assert!(revised.contains("\nt2: B.M:0.6\n"), "revised t2:\n{revised}");
    assert!(revised.contains("\nt6: C.L:0.6 A.L:0.8 D.H:0.2 B.M:0.8\n"));
}

#[test]
fn fuzzify_reports_when_no_terms_survive() {
    let output = fri(&["fuzzify", "--demo", "--min-rare", "7", "--absolute"]);
    assert_success(&output);
    let text = stdout_of(&output);
    assert!(text.contains("no retained terms"), "{text}");
}

#[test]
fn fuzzify_json_lists_transformed_order_and_revised() {
    let output = fri(&[
        "fuzzify", "--demo", "--min-rare", "2", "--absolute", "--format", "json",
    ]);
    assert_success(&output);
    let value: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("fuzzify emits valid JSON");
    assert_eq!(value["transformed"].as_array().map(Vec::len), Some(8));
    assert_eq!(value["order"][0]["term"], "C.L");
    assert_eq!(value["order"][3]["term"], "B.M");
    let t2 = &value["revised"][1];
    assert_eq!(t2["tid"], 2);
    assert_eq!(t2["entries"], serde_json::json!([{"term": "B.M", "degree": 0.6}]));
}

#[test]
fn check_agrees_with_the_oracle_on_the_demo() {
    let output = fri(&[
        "check", "--demo", "--min-rare", "2", "--max-freq", "4", "--absolute",
    ]);
    assert_success(&output);
    let message = stderr_of(&output);
    assert!(
        message.contains("miner and oracle agree on 7 itemsets"),
        "stderr: {message}"
    );
}

#[test]
fn check_sweeps_random_instances() {
    let output = fri(&["check", "--random", "200", "--seed", "11"]);
    assert_success(&output);
    let message = stderr_of(&output);
    assert!(
        message.contains("checked 200 random instances (seed 11)"),
        "stderr: {message}"
    );
}

#[test]
fn bench_emits_one_csv_row_per_setting() {
    let output = fri(&["bench", "--demo", "2:4", "2:5", "0:8", "--absolute"]);
    assert_success(&output);
    let stdout = stdout_of(&output);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4, "{stdout}");
    assert_eq!(
        lines[0],
        "dataset,min_sup,max_sup,patterns,elapsed_ms,peak_mem_estimate"
    );
    let patterns: Vec<&str> = lines[1..]
        .iter()
        .map(|line| line.split(',').nth(3).expect("patterns column"))
        .collect();
    assert_eq!(patterns, ["7", "8", "33"]);
    for line in &lines[1..] {
        assert!(line.starts_with("demo,"), "{line}");
    }
}

#[test]
fn bench_with_no_settings_emits_only_the_header() {
    let output = fri(&["bench", "--demo"]);
    assert_success(&output);
    assert_eq!(
        stdout_of(&output),
        "dataset,min_sup,max_sup,patterns,elapsed_ms,peak_mem_estimate\n"
    );
}

#[test]
fn bench_validates_settings_before_writing_output() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out_path = dir.path().join("bench.csv");
    let output = fri(&[
        "bench",
        "--demo",
        "2:4",
        "oops",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(
        !Path::new(&out_path).exists(),
        "no artifact may appear when validation fails"
    );
}

#[test]
fn stats_summarizes_the_database() {
    let output = fri(&["stats", "--demo"]);
    assert_success(&output);
    assert_eq!(
        stdout_of(&output),
        "transactions: 8\ndistinct items: 6\navg transaction length: 3.75\nmax quantity: 11\n"
    );
    let csv = fri(&["stats", "--demo", "--format", "csv"]);
    assert_success(&csv);
    assert_eq!(
        stdout_of(&csv),
        "transactions,distinct_items,avg_transaction_len,max_quantity\n8,6,3.75,11\n"
    );
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let missing_source = fri(&["mine"]);
    assert_eq!(missing_source.status.code(), Some(1));
    assert!(stderr_of(&missing_source).contains("either --input <FILE> or --demo"));

    let unknown_flag = fri(&["mine", "--nope"]);
    assert_eq!(unknown_flag.status.code(), Some(1));

    let conflicting = fri(&["mine", "--demo", "--input", "x.txt"]);
    assert_eq!(conflicting.status.code(), Some(1));

    let unreadable = fri(&["mine", "--input", "/nonexistent/db.txt"]);
    assert_eq!(unreadable.status.code(), Some(1));
    assert!(stderr_of(&unreadable).contains("cannot read"));

    let help = fri(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_of(&help).contains("mine"));

    let version = fri(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
}

#[test]
fn malformed_input_names_the_offending_line() {
    let dir = tempfile::tempdir().expect("temp dir");
    let db_path = dir.path().join("bad.txt");
    fs::write(&db_path, "A:3 B:5\nB:oops\n").expect("write database");
    let output = fri(&["stats", "--input", db_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let message = stderr_of(&output);
    assert!(message.contains("line 2"), "stderr: {message}");
}
