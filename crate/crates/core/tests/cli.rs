//! End-to-end tests of the `interleaver-spread` binary: exit codes,
//! output schemas, the permutation file format, and the search/spread
//! round trip.

use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_interleaver-spread"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn spread_reads_the_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.txt");
    fs::write(&path, "# an interleaver reaching the cap\n0 2 4\n1 3\n").unwrap();
    let out = run(&["spread", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n,spread\n5,3\n");
}

#[test]
fn spread_with_witness_adds_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.txt");
    fs::write(&path, "0 1 2 3 4 5 6 7\n").unwrap();
    let out = run(&["spread", path.to_str().unwrap(), "--witness"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,spread,witness_i,witness_j"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "8");
    assert_eq!(row[1], "2");
    // the witness must actually realize the spread
    let (i, j): (usize, usize) = (row[2].parse().unwrap(), row[3].parse().unwrap());
    assert_ne!(i, j);
    assert!(i < 8 && j < 8);
}

#[test]
fn spread_rejects_bad_files_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.txt");
    fs::write(&dup, "0 0 1\n").unwrap();
    let out = run(&["spread", dup.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("more than once"), "{}", stderr(&out));

    let garbled = dir.path().join("garbled.txt");
    fs::write(&garbled, "0 one 2\n").unwrap();
    let out = run(&["spread", garbled.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let out = run(&["spread", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["bogus-subcommand"]);
    assert_eq!(code(&out), 1);
    let out = run(&["bound", "--n", "5", "--s", "3", "--kind", "bogus"]);
    assert_eq!(code(&out), 1);
    let out = run(&["count"]); // missing --n
    assert_eq!(code(&out), 1);
    let out = run(&[
        "sample",
        "--n",
        "8",
        "--trials",
        "5",
        "--seed",
        "not-a-seed",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_and_version_exit_0() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Usage"));
    let out = run(&["--version"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn count_rows_for_small_blocklengths() {
    let out = run(&["count", "--n", "5"]);
    assert_eq!(
        stdout(&out),
        "n,n_factorial,count_gt2,count_eq2\n5,120,10,110\n"
    );
    let out = run(&["count", "--n", "3"]);
    assert_eq!(stdout(&out), "n,n_factorial,count_gt2,count_eq2\n3,6,0,6\n");
    let out = run(&["count", "--n", "2"]);
    assert_eq!(stdout(&out), "n,n_factorial,count_gt2,count_eq2\n2,2,0,2\n");
    let out = run(&["count", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn prob_row_carries_the_exact_fraction() {
    let out = run(&["prob", "--n", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,prob_gt2,exact,log10"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "5");
    assert_eq!(row[2], "1/12");
    let p: f64 = row[1].parse().unwrap();
    assert!((p - 1.0 / 12.0).abs() < 1e-11);
}

#[test]
fn bound_rows_match_known_fractions() {
    let out = run(&["bound", "--n", "5", "--s", "3", "--kind", "tight"]);
    let text = stdout(&out);
    assert!(text.starts_with("n,s,kind,bound,log10,exact,note\n"));
    assert!(text.contains(",tight,"), "{text}");
    assert!(text.contains("1/216"), "{text}");

    let out = run(&["bound", "--n", "5", "--s", "3", "--kind", "basic"]);
    assert!(stdout(&out).contains("1/7776"));

    // default kind is tight
    let out = run(&["bound", "--n", "5", "--s", "3"]);
    assert!(stdout(&out).contains("1/216"));

    let out = run(&["bound", "--n", "1024", "--s", "3", "--kind", "asymptotic"]);
    let text = stdout(&out);
    let bound: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((bound - 0.1353352832).abs() < 1e-9);
}

#[test]
fn bound_above_the_cap_is_flagged_not_fatal() {
    let out = run(&["bound", "--n", "5", "--s", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.contains("above_cap"), "{row}");
    assert!(row.contains("0.00000000000e0"), "{row}");
    assert!(row.contains("-inf"), "{row}");
}

#[test]
fn bound_validates_inputs() {
    let out = run(&["bound", "--n", "1", "--s", "3"]);
    assert_eq!(code(&out), 2);
    let out = run(&["bound", "--n", "9", "--s", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fig2_table_matches_the_prob_command() {
    let out = run(&["table", "--fig", "fig2", "--n-min", "5", "--n-max", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,exact_prob_gt2,tight_bound_s3,above_cap")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first[0], "5");
    let p: f64 = first[1].parse().unwrap();
    assert!((p - 1.0 / 12.0).abs() < 1e-11);
    let b: f64 = first[2].parse().unwrap();
    assert!((b - 1.0 / 216.0).abs() < 1e-11);
    assert_eq!(first[3], "0");
}

#[test]
fn fig2_row_at_n100_is_near_the_limit() {
    let out = run(&["table", "--fig", "fig2", "--n-min", "100", "--n-max", "100"]);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let p: f64 = row[1].parse().unwrap();
    assert!((p - 0.1353).abs() < 0.01, "exact_prob_gt2(100) = {p}");
}

#[test]
fn fig4_table_flags_rows_above_the_cap() {
    let out = run(&["table", "--fig", "fig4", "--n", "16,32"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,n,tight_bound,log10,above_cap"));
    // s sweeps 2..=max_spread(32) = 8 for both blocklengths
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 7 * 2);
    for row in &rows {
        let s: usize = row[0].parse().unwrap();
        let n: usize = row[1].parse().unwrap();
        let flagged = row[4] == "1";
        let above = match n {
            16 => s > 5, // max_spread(16) = 5
            32 => s > 8, // max_spread(32) = 8
            _ => unreachable!(),
        };
        assert_eq!(flagged, above, "row {row:?}");
        if flagged {
            assert_eq!(row[2], "0.00000000000e0");
        }
    }
}

#[test]
fn fig3_table_defaults_are_overridable() {
    let out = run(&[
        "table", "--fig", "fig3", "--n-min", "8", "--n-max", "32", "--step", "8", "--s", "3,4",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("n,s,tight_bound,log10,above_cap\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 2);
}

#[test]
fn sample_histogram_at_n3_is_all_twos() {
    let out = run(&["sample", "--n", "3", "--trials", "10", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n,spread,count,fraction,trials,seed\n3,2,10,1.00000000000e0,10,7\n"
    );
}

#[test]
fn sample_estimate_at_threshold_two_is_certain() {
    let out = run(&[
        "sample", "--n", "32", "--s", "2", "--trials", "1000", "--seed", "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "1000"); // hits
    assert_eq!(row[4], "1.00000000000e0"); // estimate
}

#[test]
fn hex_and_decimal_seeds_agree() {
    let a = run(&["sample", "--n", "16", "--trials", "500", "--seed", "0xFF"]);
    let b = run(&["sample", "--n", "16", "--trials", "500", "--seed", "255"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn search_round_trips_through_the_spread_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("found.txt");
    let out = run(&[
        "search",
        "--n",
        "64",
        "--s",
        "3",
        "--seed",
        "1",
        "--max-attempts",
        "1000",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], "true");
    let reported_spread: usize = row[4].parse().unwrap();
    assert!(reported_spread >= 3);

    let check = run(&["spread", path.to_str().unwrap()]);
    assert_eq!(code(&check), 0);
    let spread: usize = stdout(&check)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(spread >= 3, "round-tripped spread {spread}");
    assert_eq!(spread, reported_spread);
}

#[test]
fn exhausted_search_exits_3_with_a_report_row() {
    let out = run(&[
        "search",
        "--n",
        "64",
        "--s",
        "8",
        "--seed",
        "5",
        "--max-attempts",
        "5",
    ]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], "false");
    assert_eq!(row[3], "5");
}

#[test]
fn impossible_search_targets_exit_2() {
    let out = run(&[
        "search",
        "--n",
        "9",
        "--s",
        "5",
        "--seed",
        "0",
        "--max-attempts",
        "10",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
}

#[test]
fn oracle_rows_and_caps() {
    let out = run(&["oracle", "--n", "5"]);
    assert_eq!(stdout(&out), "n,spread,count\n5,2,110\n5,3,10\n");
    let out = run(&["oracle", "--n", "10"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cap 9"), "{}", stderr(&out));
    let out = run(&["oracle", "--n", "12", "--allow-large"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cap 11"), "{}", stderr(&out));
}

#[test]
fn json_rows_are_tagged_one_per_line() {
    let out = run(&["oracle", "--n", "5", "--out", "json"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["row"], "oracle_row");
        assert_eq!(v["n"], 5);
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.txt");
    fs::write(&path, "0 2 4 1 3\n").unwrap();
    let out = run(&["spread", path.to_str().unwrap(), "--out", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["row"], "spread_row");
    assert_eq!(v["n"], 5);
    assert_eq!(v["spread"], 3);
}
