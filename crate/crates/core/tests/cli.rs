use std::path::PathBuf;
use std::process::Command;

use c4cn::cli::{run_with, Report, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("c4cn").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("c4cn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = run(&full);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn group_json_for_n5() {
    let r = json(&["group", "5"]);
    assert_eq!(r.command, "group");
    assert_eq!(r.n.as_deref(), Some("5"));
    assert_eq!(
        r.invariant_factors.unwrap(),
        ["19", "19", "779", "15580"].map(String::from)
    );
    assert_eq!(r.order.as_deref(), Some("4381392020"));
}

#[test]
fn group_methods_agree() {
    let closed = json(&["group", "9", "--method", "closed"]);
    for method in ["snf", "relations"] {
        let other = json(&["group", "9", "--method", method]);
        assert_eq!(other.invariant_factors, closed.invariant_factors, "{method}");
        assert_eq!(other.order, closed.order);
    }
}

#[test]
fn json_round_trips() {
    let cases: [&[&str]; 6] = [
        &["group", "40"],
        &["treecount", "7", "--check", "all"],
        &["seq", "f", "--upto", "30"],
        &["verify", "--range", "3..6"],
        &["subgroup", "3", "9"],
        &["valuations", "--upto", "20"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.push("--json");
        let (code, out, _) = run(&full);
        assert_eq!(code, EXIT_OK, "{args:?}");
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        let report: Report = serde_json::from_value(value.clone()).unwrap();
        let again = serde_json::to_value(&report).unwrap();
        assert_eq!(value, again, "{args:?}");
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out);
    }
}

#[test]
fn json_numbers_are_strings() {
    let (_, out, _) = run(&["group", "30", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(value["order"].is_string());
    assert!(value["n"].is_string());
    assert!(value["invariant_factors"].as_array().unwrap().iter().all(|x| x.is_string()));
    assert!(value.get("checks").is_none(), "absent fields are omitted");
}

#[test]
fn verify_identical_across_thread_counts() {
    let base = run(&["verify", "--range", "3..16", "--pipeline", "--threads", "1"]);
    assert_eq!(base.0, EXIT_OK);
    assert!(base.1.contains("all 14 values of n agree"));
    for threads in ["0", "2", "5"] {
        let other = run(&["verify", "--range", "3..16", "--pipeline", "--threads", threads]);
        assert_eq!(other.0, base.0);
        assert_eq!(other.1, base.1, "threads = {threads}");
    }
    assert!(base.2.starts_with("elapsed: "), "timing goes to stderr");
}

#[test]
fn verify_lines_are_ordered() {
    let (_, out, _) = run(&["verify", "--range", "3..=8"]);
    let ns: Vec<&str> = out.lines().take(6).map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(ns, ["n=3", "n=4", "n=5", "n=6", "n=7", "n=8"]);
}

#[test]
fn snf_from_file() {
    let path = scratch("diag46.txt", "2 2\n4 0\n0 6\n");
    let (code, out, _) = run(&["snf", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "diagonal: 2 12\n");
    let (code, out, _) = run(&["snf", "--matrix", path.to_str().unwrap(), "--transforms"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("P:\n") && out.contains("Q:\n"));
}

#[test]
fn graph_group_from_edges() {
    let path = scratch("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let r = json(&["graph-group", "--edges", path.to_str().unwrap()]);
    assert_eq!(r.invariant_factors.unwrap(), ["4", "4"].map(String::from));
    assert_eq!(r.order.as_deref(), Some("16"));
}

#[test]
fn seq_values() {
    let r = json(&["seq", "e", "--upto", "5"]);
    assert_eq!(r.values.unwrap(), ["0", "1", "4", "15", "56", "209"].map(String::from));
    let r = json(&["seq", "v", "--upto", "3", "--m", "2"]);
    assert_eq!(r.values.unwrap(), ["2", "4", "14", "52"].map(String::from));
    let r = json(&["seq", "g", "--upto", "2"]);
    assert_eq!(r.values.unwrap(), ["1", "7", "41"].map(String::from));
}

#[test]
fn treecount_checks() {
    let r = json(&["treecount", "6", "--check", "all"]);
    assert_eq!(r.tree_count, r.checks.as_ref().unwrap()[0].detail.clone().into());
    assert!(r.checks.unwrap().iter().all(|c| c.pass));
}

#[test]
fn exit_code_matrix() {
    let missing = std::env::temp_dir().join("c4cn-no-such-file.txt");
    let disconnected = scratch("two-edges.txt", "0 1\n2 3\n");
    let ragged = scratch("ragged.txt", "2 2\n1 2\n3\n");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["group", "5"], EXIT_OK),
        (vec!["group", "3", "--method", "snf"], EXIT_OK),
        (vec!["treecount", "3", "--check", "trig"], EXIT_OK),
        (vec!["subgroup", "3", "9"], EXIT_OK),
        (vec!["subgroup", "4", "5"], EXIT_OK),
        (vec!["valuations", "--upto", "50"], EXIT_OK),
        (vec!["verify", "--range", "3..5"], EXIT_OK),
        (vec!["--help"], EXIT_OK),
        (vec![], EXIT_USAGE),
        (vec!["group"], EXIT_USAGE),
        (vec!["group", "2"], EXIT_USAGE),
        (vec!["group", "-4"], EXIT_USAGE),
        (vec!["group", "5", "--method", "magic"], EXIT_USAGE),
        (vec!["treecount", "1"], EXIT_USAGE),
        (vec!["treecount", "5", "--check", "trig", "--tolerance", "0"], EXIT_USAGE),
        (vec!["seq", "u", "--upto", "4"], EXIT_USAGE),
        (vec!["seq", "e", "--upto", "4", "--m", "3"], EXIT_USAGE),
        (vec!["seq", "u", "--upto", "4", "--m", "0"], EXIT_USAGE),
        (vec!["valuations", "--upto", "1"], EXIT_USAGE),
        (vec!["subgroup", "2", "4"], EXIT_USAGE),
        (vec!["verify", "--range", "2..5"], EXIT_USAGE),
        (vec!["verify", "--range", "9..5"], EXIT_USAGE),
        (vec!["verify", "--range", "five"], EXIT_USAGE),
        (vec!["snf", "--matrix", missing.to_str().unwrap()], EXIT_USAGE),
        (vec!["snf", "--matrix", ragged.to_str().unwrap()], EXIT_USAGE),
        (vec!["graph-group", "--edges", disconnected.to_str().unwrap()], EXIT_USAGE),
        (vec!["bogus"], EXIT_USAGE),
    ];
    for (args, expected) in cases {
        let (code, _, err) = run(&args);
        assert_eq!(code, expected, "{args:?}: {err}");
        if expected == EXIT_USAGE {
            assert!(!err.is_empty(), "{args:?} should explain itself on stderr");
        }
    }
}

#[test]
fn subgroup_negative_is_reported() {
    let (code, out, _) = run(&["subgroup", "4", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("false\n"));
    let r = json(&["subgroup", "4", "8"]);
    assert!(r.checks.unwrap()[0].pass);
}

#[test]
fn tight_tolerance_fails_verification() {
    let (code, _, _) = run(&["treecount", "50", "--check", "trig", "--tolerance", "1e-300"]);
    assert_eq!(code, EXIT_FAILED);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_c4cn");
    let ok = Command::new(bin).args(["group", "4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("Z_2 + Z_2 + Z_8"));
    let bad = Command::new(bin).args(["group", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
}
