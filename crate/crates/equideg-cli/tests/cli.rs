//! The `equideg` binary: output formats, exit codes and the cache directory.

use std::path::PathBuf;
use std::process::{Command, Output};

use equideg::degree::DegreeEngine;
use equideg_cli::commands::{element_of, TermRecord};
use equideg_cli::golden;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equideg")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("UTF-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let output = run(&full);
    assert_eq!(output.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_str(&stdout(&output)).expect("valid JSON")
}

#[test]
fn class_listings() {
    let s4 = run(&["ccs", "s4"]);
    assert_eq!(s4.status.code(), Some(0));
    assert_eq!(stdout(&s4).lines().count(), 12);
    let rows = json(&["ccs", "s4xo2"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 100);
    let flagged: Vec<u64> = rows.iter().filter(|r| r["flagged"] == true).map(|r| r["id"].as_u64().unwrap()).collect();
    let expected: Vec<u64> = golden::flagged_ids().unwrap().into_iter().map(|id| id as u64).collect();
    assert_eq!(flagged, expected);
    assert_eq!(json(&["ccs", "o2"]).as_array().unwrap().len(), 4);
}

#[test]
fn reference_class_table_matches() {
    let engine = DegreeEngine::new();
    assert_eq!(golden::ccs_mismatches(engine.ring().table()).unwrap(), Vec::<String>::new());
}

#[test]
fn product_terms_round_trip_through_json() {
    let engine = DegreeEngine::new();
    let table = engine.ring().table();
    for (left, right) in [("45", "61"), ("61", "66"), ("100", "46:2")] {
        let report = json(&["mul", left, right, "--oracle"]);
        assert_eq!(report["oracle_checked"], true);
        let terms: Vec<TermRecord> = serde_json::from_value(report["terms"].clone()).unwrap();
        let parse = |text: &str| equideg_cli::commands::parse_class(table, text).unwrap();
        assert_eq!(element_of(&terms), engine.ring().generator_mul(parse(left), parse(right)).unwrap(), "{left} · {right}");
    }
}

#[test]
fn invariant_at_a_shaded_point() {
    let report = json(&["invariant", "ide", "--c1", "-0.5", "--c2", "0.5"]);
    assert_eq!(report["region"], "III");
    let alpha0 = report["bifurcation"]["alpha0"].as_f64().unwrap();
    assert!((alpha0 - 1.177410022515).abs() < 1e-9, "{alpha0}");
}

#[test]
fn invariant_outside_the_shaded_area() {
    let output = run(&["invariant", "mdde", "--c1", "-1", "--c2", "0.75"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("NONE"), "{text}");
    assert!(text.contains("no bifurcation on the selected surface"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 7] = [
        &["ccs", "s5"],
        &["mul", "1", "45"],
        &["mul", "46", "x"],
        &["mul", "101", "45"],
        &["invariant", "mdde", "--c1", "5", "--c2", "0.5"],
        &["--format", "csv", "invariant", "ide", "--c1", "-0.5", "--c2", "0.5"],
        &["grid"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn grid_as_csv() {
    let output = run(&["--format", "csv", "grid", "ide", "--resolution", "4"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("c1,c2,region,alpha0"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn table_exit_codes_and_cache() {
    let dir: PathBuf = std::env::temp_dir().join(format!("equideg-cache-{}", std::process::id()));
    let cached = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_equideg"))
            .args(args)
            .env(equideg_cli::commands::CACHE_ENV, &dir)
            .output()
            .expect("binary runs")
    };
    let first = cached(&["table", "mdde"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    let second = cached(&["table", "mdde"]);
    assert_eq!(stdout(&first), stdout(&second));

    let ide = cached(&["table", "ide"]);
    assert_eq!(ide.status.code(), Some(1));
    assert!(stdout(&ide).contains("FAIL"));
    std::fs::remove_dir_all(&dir).unwrap();
}
