use std::io::Write;
use std::process::{Command, Output};

fn msdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msdual")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn dual_ops() {
    let out = msdual(&["dual", "--op", "tau", "--ring", "zmod:3", "[0;2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[0;1)+[1;1)");

    let out = msdual(&["dual", "--op", "flat", "--ring", "z", "[0;2)"]);
    assert_eq!(stdout(&out).trim(), "[-1;2)");

    let out = msdual(&["dual", "--op", "mw", "--ring", "z", "[0;2)", "--json"]);
    let v = json(&out);
    assert_eq!(v["output"], "[0;1)+[1;1)");
    assert_eq!(v["op"], "mw");
}

#[test]
fn periodic_input_is_a_usage_error() {
    let out = msdual(&["dual", "--op", "sharp", "--ring", "zmod:2", "[0;1)+[1;1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonAperiodic"));
}

#[test]
fn syntax_errors_report_position() {
    let out = msdual(&["dual", "--op", "tau", "--ring", "z", "[0;1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));
    let out = msdual(&["dual", "--op", "tau", "--ring", "zmod:1", "[0;1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn crystal_ops() {
    let out = msdual(&["crystal-op", "--op", "f", "--i", "1", "--ring", "zmod:3", "[0;1)"]);
    assert_eq!(stdout(&out).trim(), "[0;2)");
    let out = msdual(&["crystal-op", "--op", "epsilon", "--i", "0", "--ring", "zmod:3", "2[0;1)"]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = msdual(&["crystal-op", "--op", "e", "--i", "2", "--ring", "zmod:3", "[0;1)"]);
    assert_eq!(stdout(&out).trim(), "undefined");
    let out = msdual(&["crystal-op", "--op", "f", "--ring", "zmod:3", "[0;1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_exports() {
    let out = msdual(&["graph", "--ring", "zmod:3", "--max-degree", "3", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 1 + 3 + 9 + 21);
    let out = msdual(&["graph", "--ring", "zmod:2", "--max-degree", "2", "--format", "dot"]);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("[0;2)"));
}

#[test]
fn canonical_table() {
    let out = msdual(&["canonical", "--ring", "zmod:2", "--dim", "1,1", "--format", "table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b[[0;2)] = ⟨[0;2)⟩ + v⟨[0;1)+[1;1)⟩"), "{text}");
    let out = msdual(&["canonical", "--ring", "zmod:2", "--dim", "1,1", "--format", "json"]);
    assert_eq!(json(&out)["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn act_round_trips_json() {
    let out = msdual(&["act", "--op", "f", "--i", "1", "--ring", "zmod:3", "[0;1)", "--json"]);
    let first = stdout(&out);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(first.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let out = msdual(&["act", "--op", "eprime", "--i", "1", "--ring", "zmod:3", "--input", path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // back in the degree of [0;1)
    assert!(stdout(&out).contains("[0;1)"));
}

#[test]
fn oracles() {
    let out = msdual(&["oracle", "--op", "aut-count", "--q", "2", "--ring", "zmod:2", "2[0;1)", "--json"]);
    let v = json(&out);
    assert_eq!(v["count"], "6");
    assert_eq!(v["agree"], true);

    let out = msdual(&["oracle", "--op", "hall-count", "--q", "3", "--ring", "zmod:2", "--sub", "[0;1)", "--quot", "[1;1)", "[0;2)"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = msdual(&["oracle", "--op", "hall-count", "--q", "3", "--ring", "zmod:2", "--sub", "[1;1)", "--quot", "[0;1)", "[0;2)"]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = msdual(&["oracle", "--op", "geom-dual", "--ring", "zmod:3", "--seed", "7", "[0;2)"]);
    assert_eq!(stdout(&out).trim(), "[0;1)+[1;1)");
}

#[test]
fn labels() {
    let out = msdual(&["label", "--mu", "2,1", "--a", "0,-1", "--ring", "zmod:2"]);
    assert_eq!(stdout(&out).lines().next(), Some("[0;2)+[1;1)"));
    let out = msdual(&["label", "--partition", "(2,1)", "--ring", "z", "--json"]);
    let v = json(&out);
    assert_eq!(v["multisegment"], "[-1;1)+[0;2)");
    assert_eq!(v["partition"], "(2,1)");
}

#[test]
fn verify_exit_codes() {
    let out = msdual(&["verify", "involution", "--ring", "zmod:3", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = msdual(&["verify", "hall", "--max-dim", "2", "--n", "2", "--json"]);
    assert_eq!(json(&out)["passed"], true);
    let out = msdual(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_guard_and_override() {
    let out = msdual(&["graph", "--ring", "zmod:2", "--max-degree", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BoundExceeded"));
    let out = Command::new(env!("CARGO_BIN_EXE_msdual"))
        .args(["graph", "--ring", "zmod:2", "--max-degree", "11"])
        .env("MSDUAL_MAX_DEGREE", "11")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(msdual(&[]).status.code(), Some(2));
    assert_eq!(msdual(&["dual", "--op", "nope", "[0;1)"]).status.code(), Some(2));
}
