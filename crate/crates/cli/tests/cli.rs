use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hopf_cell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-cell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopf-cell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn fuse_at_root_of_unity() {
    let out = hopf_cell(&["fuse", "--ring", "sl2-root", "3", "L(2)*L(1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["value"], "1*L(3) + 2*L(1)");
    let inline = report(&hopf_cell(&["fuse", "--ring", "sl2-root=3", "dim(L(2)*L(1))"]));
    assert_eq!(inline["result"]["dim"], 6);
}

#[test]
fn induce_negative_weight_is_definitive() {
    let out = hopf_cell(&["induce", "--preset", "slq2", "--weight", "t^-1", "--cutoff", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["dimension"], 0);
    assert_eq!(r["result"]["definitive_negative"], true);
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn check_bigcell_reports_every_degree() {
    let out = hopf_cell(&["check-bigcell", "--preset", "slq2", "--max-deg", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["injectivity"]["degrees"].as_array().unwrap().len(), 5);
    assert_eq!(r["defaults"]["bigcell_deg"], 4);
}

#[test]
fn inconclusive_dominance_exits_2() {
    let out = hopf_cell(&["dominant", "--preset", "hq", "--weight", "alpha^-1", "--cutoff", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["reason"].is_string());
}

#[test]
fn shipped_file_loads() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/presets/slq2.json");
    let from_file = report(&hopf_cell(&["check-hopf", "--file", path]));
    let from_preset = report(&hopf_cell(&["check-hopf", "--preset", "slq2"]));
    assert_eq!(from_file["verdict"], "pass");
    assert_eq!(from_file["result"], from_preset["result"]);
}

#[test]
fn incomplete_file_names_missing_generator() {
    let path = scratch_file(
        "missing.json",
        r#"{"field": "Q(q)", "generators": ["a", "b", "c", "d"],
            "relations": ["b*a - q*a*b"],
            "delta": {"a": "a#a", "b": "b#b", "c": "c#c", "d": "d#d"},
            "epsilon": {"a": "1", "b": "1", "c": "1", "d": "1"},
            "antipode": {"a": "a", "b": "b", "c": "c"}}"#,
    );
    let out = hopf_cell(&["check-hopf", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("antipode") && err.contains('d'), "{err}");
}

#[test]
fn malformed_file_reports_position() {
    let path = scratch_file("broken.json", "{\"field\": \"Q\",\n \"generators\": [\"x\" }");
    let out = hopf_cell(&["check-hopf", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn non_confluent_file_lists_critical_pair() {
    let path = scratch_file(
        "overlap.json",
        r#"{"field": "Q", "generators": ["x", "y"],
            "relations": ["y*x -> x", "x*x -> y"],
            "delta": {"x": "x#1 + 1#x", "y": "y#1 + 1#y"},
            "epsilon": {"x": "0", "y": "0"},
            "antipode": {"x": "-x", "y": "-y"}}"#,
    );
    let out = hopf_cell(&["check-hopf", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let pairs = report(&out)["result"]["confluence"]["critical_pairs"].clone();
    assert!(pairs.as_array().unwrap().iter().any(|p| p.as_str().unwrap().starts_with("y*x^2: y vs y^2")), "{pairs}");
}

#[test]
fn deform_commands() {
    let mul = report(&hopf_cell(&["deform", "--matrix", "0 1; 0 0", "--p", "2", "mul", "b", "a_2"]));
    assert_eq!(mul["result"]["deformed"], "4*b*a_2");
    let out = hopf_cell(&["deform", "--host", "kz2", "--matrix", "1 2; 0 1", "assoc-check"]);
    assert_eq!(out.status.code(), Some(0));
    let out = hopf_cell(&["deform", "--host", "kz2", "--matrix", "0 1; 0 0", "bigcell-check"]);
    assert_eq!(out.status.code(), Some(64));
    let out = hopf_cell(&["deform", "--matrix", "0 1 0; 0 0 0; 0 0 0", "mul", "a", "b"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(hopf_cell(&["induce", "--preset", "slq2"]).status.code(), Some(64));
    assert_eq!(hopf_cell(&["induce", "--preset", "slq2", "--weight", "w"]).status.code(), Some(64));
    assert_eq!(hopf_cell(&["fuse", "--ring", "sl2-root", "4", "L(1)"]).status.code(), Some(64));
    assert_eq!(hopf_cell(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["deform", "--matrix", "0 1; 0 0", "--p", "2", "assoc-check", "--max-deg", "1", "--samples", "20", "--seed", "7"];
    let (a, b) = (hopf_cell(&args), hopf_cell(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
