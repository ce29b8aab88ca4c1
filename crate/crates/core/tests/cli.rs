use std::process::{Command, Output};

use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgering")).args(args).output().unwrap()
}

#[test]
fn analyze_file_writes_json() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("k4.txt");
    std::fs::write(&input, "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    let json = dir.path().join("k4.json");
    let out = run(&["analyze", "--input", input.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["mat"], 2);
    assert_eq!(report["regularity"]["value"], 2);
    assert_eq!(report["h_star"], serde_json::json!([1, 2, 1]));
    assert_eq!(report["theorem1"]["status"], "holds");
}

#[test]
fn analyze_family_with_toric_certificate() {
    let out = run(&["analyze", "--family", "two_triangles_path(2)", "--toric"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("certified up to degree 6"), "{stdout}");
    assert!(stdout.contains("not-applicable"));
}

#[test]
fn malformed_input_fails_with_line_number() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("bad.txt");
    std::fs::write(&input, "2 1\n1 1\n").unwrap();
    let out = run(&["analyze", "--input", input.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_theorem_small_range() {
    let dir = tempdir().unwrap();
    let json = dir.path().join("v.json");
    let out = run(&["verify-theorem", "--nmax", "5", "--json", json.to_str().unwrap()]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary["graphs"], 1 + 2 + 6 + 21);
    assert_eq!(summary["violations"], serde_json::json!([]));
}

#[test]
fn families_csv() {
    let dir = tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let out = run(&["families", "--rmax", "2", "--lmax", "2", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.headers().unwrap().iter().next(), Some("family"));
    assert_eq!(reader.records().count(), 8);
}

#[test]
fn q5_reports_scope() {
    let out = run(&["q5", "--m", "2", "--nmax", "5"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("empirical, bounded scope"));
}

#[test]
fn analyze_requires_a_graph() {
    assert!(!run(&["analyze"]).status.success());
}
