use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const Z2_NAMED: &str = r#"{"group": {"kind": "finite", "table": [[0,1],[1,0]], "names": ["1","g"]},
                           "recursion": {"rule": "diagonal"}}"#;
const ADDING: &str = r#"{"group": {"kind": "cyclic"}, "recursion": {"rule": "adding"}}"#;
const Z4_DOUBLING: &str = r#"{"group": {"kind": "cyclic", "n": 4}, "recursion": {"rule": "custom", "table": {
    "0": {"left": "0", "right": "0"}, "1": {"left": "2", "right": "2"},
    "2": {"left": "0", "right": "0"}, "3": {"left": "2", "right": "2"}}}}"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lthompson")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn identity_predicate() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "z2.json", Z2_NAMED);
    let ctx = ctx.to_str().unwrap();
    let o = run(&["--context", ctx, "is-id", "iota(g)*iota(g)^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "identity: true");
    let o = run(&["--context", ctx, "is-id", "iota(g)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "identity: false");
    let o = run(&["--context", ctx, "eq", "[0|g|0; 1|1|1]", "iota(g)"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--context", ctx, "is-id", "comm(lambda(0,g), lambda(1,g))"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["is-id", "iota("]).status.code(), Some(2));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(run(&["--context", "/nonexistent.json", "is-id", "id"]).status.code(), Some(2));
}

#[test]
fn odometer_action() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "add.json", ADDING);
    let ctx = ctx.to_str().unwrap();
    let o = run(&["--context", ctx, "act", "lambda(eps,t)", "--point", "(0)", "--depth", "4"]);
    assert_eq!(stdout(&o), "1000");
    let o = run(&["--context", ctx, "act", "lambda(eps,t)^6", "--point", "(0)", "--depth", "5"]);
    assert_eq!(stdout(&o), "01100");
    let o = run(&["--context", ctx, "act", "lambda(eps,t)^-1", "--point", "(0)"]);
    assert_eq!(stdout(&o), "(1)");
}

#[test]
fn element_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "z2.json", Z2_NAMED);
    let ctx = ctx.to_str().unwrap();
    let o = run(&["--context", ctx, "--json", "mul", "iota(g)", "[0|1|1; 1|1|0]"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    let file = write(dir.path(), "x.json", &first);
    let at = format!("@{}", file.display());
    let o = run(&["--context", ctx, "--json", "reduce", &at]);
    assert_eq!(stdout(&o), first);
    let o = run(&["--context", ctx, "eq", &at, "iota(g) * [0|1|1; 1|1|0]"]);
    assert_eq!(o.status.code(), Some(0));
    // a header naming another context is rejected
    let other = write(dir.path(), "add.json", ADDING);
    let o = run(&["--context", other.to_str().unwrap(), "reduce", &at]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matching_complex_then_homology() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m5.json");
    let o = run(&["complex", "matching", "-n", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--json", "homology", out.to_str().unwrap(), "--up-to", "0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["dim"], 0);
    assert_eq!(v[0]["betti"], 0);
    let out4 = dir.path().join("m4.json");
    run(&["complex", "matching", "-n", "4", "--out", out4.to_str().unwrap()]);
    let o = run(&["homology", out4.to_str().unwrap(), "--up-to", "0"]);
    assert_eq!(stdout(&o), "H~0 = Z^2");
}

#[test]
fn descending_link_checks() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "z2.json", Z2_NAMED);
    let o = run(&["--json", "complex", "dlink", "-n", "4", "--group", ctx.to_str().unwrap(), "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let start = text.rfind("{\n  \"bound\"").unwrap();
    let report: Value = serde_json::from_str(&text[start..]).unwrap();
    assert_eq!(report["complete_join"], true);
    let o = Command::new(env!("CARGO_BIN_EXE_lthompson"))
        .args(["complex", "dlink", "-n", "5"])
        .env("LTHOMPSON_ENUM_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn perfection_commands() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "z2.json", Z2_NAMED);
    let ctx = ctx.to_str().unwrap();
    let o = run(&["--context", ctx, "decompose", "[00|g|1; 01|1|00; 1|g|01]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verified: true"));
    let o = run(&["--context", ctx, "witness-commutator", "[00|1|00; 01|g|01; 1|g|1]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--context", ctx, "witness-commutator", "iota(g)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn supports_labels_and_germs() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "z2.json", Z2_NAMED);
    let ctx = ctx.to_str().unwrap();
    let o = run(&["--context", ctx, "--json", "lsupp", "lambda(01,g)", "--depth", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cones"], serde_json::json!(["010", "011"]));
    let o = run(&["--context", ctx, "label", "iota(g)", "--at", "0110"]);
    assert_eq!(stdout(&o), "g");
    let o = run(&["--context", ctx, "germ", "--compare", "lambda(1,g)", "id"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--context", ctx, "germ", "--perp", "id", "id"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--context", ctx, "splinter-check", "iota(g)", "a_g(g)", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn injectivize_reports_tower() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = write(dir.path(), "z4.json", Z4_DOUBLING);
    let o = run(&["--context", ctx.to_str().unwrap(), "--json", "injectivize"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"], 2);
    assert_eq!(v["tower"], serde_json::json!([4, 2, 1]));
}
