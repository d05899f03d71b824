use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn orient4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orient4")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const P5: &str = r#"{"center_multiplicity": 2, "branches": [
    {"multiplicity": 2, "leaf_multiplicities": [2]},
    {"multiplicity": 2, "leaf_multiplicities": [2]}]}"#;

const THREE_BRANCHES: &str = r#"{"center_multiplicity": 2, "branches": [
    {"multiplicity": 2, "leaf_multiplicities": [2]},
    {"multiplicity": 2, "leaf_multiplicities": [2]},
    {"multiplicity": 2, "leaf_multiplicities": [2]}]}"#;

#[test]
fn classify_reports_both_classes() {
    let dir = TempDir::new().unwrap();
    let c0 = orient4(&["classify", &write(dir.path(), "p5.json", P5)]);
    assert_eq!(c0.status.code(), Some(0));
    assert!(stdout(&c0).starts_with("C0 (orientation number 4)"));
    let c1 = orient4(&["classify", &write(dir.path(), "t.json", THREE_BRANCHES)]);
    assert_eq!(c1.status.code(), Some(0));
    assert!(stdout(&c1).starts_with("C1 (orientation number 5)"));
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "p5.json", P5);
    let built = orient4(&["construct", "--verify", &spec]);
    assert_eq!(built.status.code(), Some(0));
    let text = stdout(&built);
    assert!(text.contains("# diameter 4, strong"));
    let edges = write(dir.path(), "p5.txt", &text);
    let checked = orient4(&["verify", &spec, &edges]);
    assert_eq!(checked.status.code(), Some(0));
    assert_eq!(stdout(&checked).trim(), "diameter 4, strong, edges match");
}

#[test]
fn construct_refuses_c1() {
    let dir = TempDir::new().unwrap();
    let out = orient4(&["construct", &write(dir.path(), "t.json", THREE_BRANCHES)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("C1"));
}

#[test]
fn json_output_parses() {
    let dir = TempDir::new().unwrap();
    let out = orient4(&["--json", "construct", "--verify", &write(dir.path(), "p5.json", P5)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["diameter"], 4);
    assert_eq!(v["strong"], true);
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(orient4(&["classify", &write(dir.path(), "bad.json", "{not json")]).status.code(), Some(2));
    let single = r#"{"center_multiplicity": 2, "branches": [{"multiplicity": 2, "leaf_multiplicities": [2]}]}"#;
    assert_eq!(orient4(&["classify", &write(dir.path(), "one.json", single)]).status.code(), Some(2));
    assert_eq!(orient4(&["classify"]).status.code(), Some(2));
}

#[test]
fn oracle_and_sperner_subcommands() {
    let k = orient4(&["sperner", "kappa", "--n", "6", "--r", "3", "--m", "13"]);
    assert_eq!(stdout(&k).trim(), "0");
    let b = orient4(&["oracle", "--bipartite", "2", "3"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).starts_with("orientation number: 4"));
    let sq = orient4(&["sperner", "squashed", "--n", "4", "--k", "2"]);
    assert_eq!(stdout(&sq).split_whitespace().collect::<Vec<_>>(), ["12", "13", "23", "14", "24", "34"]);
}
