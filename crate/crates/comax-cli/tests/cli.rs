//! End-to-end checks of the binary: exit codes, artifact files, and error
//! reporting through real process invocations.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn comax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_comax"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("comax-cli-{}-{name}", std::process::id()))
}

#[test]
fn family_run_writes_all_artifacts_and_exits_zero() {
    let json = tmp("sl2.json");
    let dot = tmp("sl2.dot");
    let text = tmp("sl2.txt");
    let out = comax(&[
        "--family",
        "sl2",
        "--field",
        "3",
        "--check",
        "--json",
        json.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
        "--text",
        text.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let report: Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    assert_eq!(report["schema"], "comax-report-v1");
    assert_eq!(report["graph"]["order"], 17);
    assert_eq!(report["graph"]["size"], 96);
    assert_eq!(report["summary"]["ok"], Value::Bool(true));
    // Round trip: re-serializing the parsed JSON reproduces the file.
    let bytes = std::fs::read_to_string(&json).unwrap();
    let mut reserialized = serde_json::to_string_pretty(&report).unwrap();
    reserialized.push('\n');
    assert_eq!(bytes, reserialized);

    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph \"sl2(F_3)\" {"));
    assert!(dot_text.contains("fillcolor=\"red\""));
    assert!(dot_text.contains(" -- "));

    let text_report = std::fs::read_to_string(&text).unwrap();
    assert!(text_report.contains("summary:"));
    assert_eq!(
        text_report.as_bytes(),
        &out.stdout[..],
        "stdout equals --text file"
    );
    for p in [json, dot, text] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn star_flag_exports_star_graph_dot() {
    let dot = tmp("h3-star.dot");
    let out = comax(&[
        "--family",
        "heisenberg3",
        "--field",
        "2",
        "--star",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph \"heisenberg3(F_2)*\" {"));
    // The isolated central line is gone from the star graph.
    assert!(!dot_text.contains("L[0 0 1]"));
    let _ = std::fs::remove_file(dot);
}

#[test]
fn operational_errors_exit_2() {
    let out = comax(&["--family", "nosuch", "--field", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown family"));

    let out = comax(&["--family", "sl2", "--field", "4"]);
    assert_eq!(out.status.code(), Some(2), "4 is not a prime power");

    let out = comax(&["--family", "sl2", "--field", "2"]);
    assert_eq!(out.status.code(), Some(2), "sl2 needs odd q");
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));

    let out = comax(&["load", "--file", "/nonexistent/algebra.txt"]);
    assert_eq!(out.status.code(), Some(2));

    let out = comax(&["--family", "sl2", "--field", "3", "--param", "oops"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("key=value"));
}

#[test]
fn undecided_checked_invariants_exit_1() {
    let out = comax(&[
        "--family", "sl2", "--field", "3", "--check", "--budget", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("UNDECIDED"));
    assert!(text.contains("undecided"));
}

#[test]
fn invariants_subset_filters_check_table() {
    let out = comax(&[
        "--family",
        "sl2",
        "--field",
        "3",
        "--check",
        "--invariants",
        "order,size,chromatic_number",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("] order:"));
    assert!(text.contains("] chromatic_number:"));
    assert!(!text.contains("] girth:"));
    assert!(text.contains("3 match"));

    let out = comax(&[
        "--family",
        "sl2",
        "--field",
        "3",
        "--check",
        "--invariants",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown invariant"));
}

#[test]
fn load_parses_structure_file_and_reports_line_errors() {
    let good = tmp("good.txt");
    std::fs::write(&good, "field 2\ndim 3\nbracket 1 2 : 0 0 1\n").unwrap();
    let out = comax(&["load", "--file", good.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("law_isolated_iff_frattini"));
    let _ = std::fs::remove_file(&good);

    // Check disabled: no verdict table at all.
    let good2 = tmp("good2.txt");
    std::fs::write(&good2, "field 3\ndim 2\n").unwrap();
    let out = comax(&["load", "--file", good2.to_str().unwrap(), "--check", "none"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("checks:"));
    let _ = std::fs::remove_file(&good2);

    // A malformed line is reported with its line number, exit 2.
    let bad = tmp("bad.txt");
    std::fs::write(&bad, "field 2\ndim 3\nbracket 1 : nope\n").unwrap();
    let out = comax(&["load", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let _ = std::fs::remove_file(&bad);

    // A bracket table violating the Jacobi identity is rejected:
    // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = e3 over F_3 here.
    let nonjacobi = tmp("nonjacobi.txt");
    std::fs::write(
        &nonjacobi,
        "field 3\ndim 3\nbracket 1 2 : 0 0 1\nbracket 1 3 : 1 0 0\nbracket 2 3 : 0 1 0\n",
    )
    .unwrap();
    let out = comax(&["load", "--file", nonjacobi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(&nonjacobi);
}

#[test]
fn sweep_family_subset_and_exit_codes() {
    let out = comax(&["sweep", "--families", "sl2,heisenberg3", "--fields", "3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("sl2"));
    assert!(text.contains("heisenberg3"));
    assert!(text.contains("sweep -> ok"));

    let out = comax(&["sweep", "--families", "nosuch", "--fields", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Budget exhaustion in a cell makes the sweep fail with exit 1.
    let out = comax(&[
        "sweep",
        "--families",
        "sl2",
        "--fields",
        "3",
        "--budget",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
