use std::path::PathBuf;

use serde_json::{json, Value};

use rees_core::cli::run;

fn corpus(name: &str) -> String {
    path("corpus", name)
}

fn fixture(name: &str) -> String {
    path("tests/fixtures", name)
}

fn path(dir: &str, name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(dir).join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn rees(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["rees"];
    full.extend_from_slice(args);
    let (code, out) = run(full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    (code, v)
}

#[test]
fn validate_exit_codes() {
    assert_eq!(rees(&["validate", &corpus("u24")]).0, 0);

    let (code, v) = rees(&["validate", &fixture("bad_exchange")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], json!("exchange_failure"));
    assert_eq!(v["witness"], json!({ "b1_set": [1, 2], "b2_set": [3, 4], "b1": 1 }));

    assert_eq!(rees(&["validate", &fixture("unequal_sizes")]).0, 1);
    assert_eq!(rees(&["validate", &fixture("duplicate_exponents")]).0, 1);

    let (code, v) = rees(&["validate", &fixture("malformed")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], json!("parse_error"));

    assert_eq!(rees(&["validate", &fixture("does_not_exist")]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(["rees", "frobnicate"]).0, 2);
    assert_eq!(run(["rees", "corpus", "--property", "nope"]).0, 2);
    let (code, help) = run(["rees", "--help"]);
    assert_eq!(code, 0);
    assert!(help.contains("analyze"));
}

#[test]
fn analyze_square() {
    let (code, v) = rees(&["analyze", &corpus("square")]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["verdict"], json!("quasi_ideal"));
    assert_eq!(v["certificate"], json!({ "verdict": "not_normal", "witness": [1, 1, 1], "method": "both" }));
    assert_eq!(v["facets"], json!({ "unit_normals": [1, 2, 3], "ell_normals": [[1, 1, -2]] }));
    assert_eq!(v["decomposition"]["holds"], json!(true));
    assert_eq!(v["oracle_checked"], json!(true));
}

#[test]
fn analyze_matroid_and_principal() {
    let (code, v) = rees(&["analyze", &corpus("u23")]);
    assert_eq!(code, 0);
    let class = v["classification"]["verdict"].as_str().unwrap();
    assert!(class == "ideal" || class == "quasi_ideal");
    assert_eq!(v["certificate"]["verdict"], json!("normal"));

    let (_, v) = rees(&["analyze", &corpus("principal")]);
    assert_eq!(v["facets"], json!({ "unit_normals": [2], "ell_normals": [[1, -1]] }));
    assert_eq!(v["certificate"]["verdict"], json!("normal"));

    let (_, v) = rees(&["analyze", &corpus("neither")]);
    assert_eq!(v["classification"]["offending_normal"], json!([1, 2, -3]));
    assert!(v.get("decomposition").is_none());
    assert_eq!(v["certificate"]["method"], json!("hilbert"));
}

#[test]
fn analyze_output_is_stable() {
    let a = run(["rees", "analyze", &corpus("k4")]);
    let b = run(["rees", "analyze", &corpus("k4")]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn big_integers_and_caps() {
    let (code, v) = rees(&["rees-facets", &fixture("big_entries")]);
    assert_eq!(code, 0);
    let text = v["ell_normals"].to_string();
    assert!(text.contains("\"9007199254740993\""), "{text}");

    let (code, v) = rees(&["analyze", &fixture("big_entries")]);
    assert_eq!(code, 0);
    assert!(v["generators"].to_string().contains("\"9007199254740993\""));
    assert_eq!(v["certificate"]["verdict"], json!("normal"));

    let (code, v) = rees(&["analyze", &fixture("big_square")]);
    assert_eq!(code, 3);
    assert_eq!(v["hilbert_basis"]["error"], json!("cap_exceeded"));

    let (code, v) = rees(&["hilbert", &corpus("square"), "--cap", "1"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], json!("cap_exceeded"));
}

#[test]
fn report_commands() {
    let (code, v) = rees(&["classify", &corpus("neither")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], json!("neither"));

    let (code, v) = rees(&["hilbert", &corpus("square")]);
    assert_eq!(code, 0);
    assert_eq!(v["elements"], json!([[0, 1, 0], [0, 2, 1], [1, 0, 0], [1, 1, 1], [2, 0, 1]]));

    let (code, v) = rees(&["rees-facets", &corpus("u12"), "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["ell_normals"], json!([[1, 1, -1]]));
    assert_eq!(rees(&["rees-facets", &corpus("k4"), "--oracle", "never"]).1["oracle_checked"], json!(false));
}

#[test]
fn yes_no_commands() {
    assert_eq!(rees(&["normality", &corpus("k4")]).0, 0);
    let (code, v) = rees(&["normality", &corpus("square")]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], json!([1, 1, 1]));

    let (code, v) = rees(&["ehrhart-check", &corpus("u23"), "--bmax", "3"]);
    assert_eq!((code, v["semidecision"].clone()), (0, json!(true)));
    let (code, v) = rees(&["ehrhart-check", &corpus("square"), "--bmax", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["dilations"][0]["witness"], json!([1, 1]));

    let (code, v) = rees(&["polymatroid-check", &corpus("veronese_2_3")]);
    assert_eq!(code, 0);
    assert_eq!(v["division"]["holds"], json!(true));
    let (code, v) = rees(&["polymatroid-check", &fixture("bad_polymatroid")]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], json!({ "a": [2, 0], "c": [0, 2], "i": 1 }));
}

#[test]
fn corpus_and_enumeration() {
    let (code, v) = rees(&["corpus", "--n-max", "3", "--property", "facet-shape"]);
    assert_eq!(code, 0);
    assert_eq!(v["reports"][0]["status"], json!("pass"));
    assert_eq!(v["reports"][0]["instances"], json!(20));
    assert!(v["meta"]["wall_ms"]["facet-shape"].is_number());

    let (code, v) = rees(&["corpus", "--n-max", "9"]);
    assert_eq!((code, v["error"].clone()), (3, json!("cap_exceeded")));

    let (code, v) = rees(&["enumerate-matroids", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], json!(15 + 36 + 15 + 1));
}

#[test]
fn text_format() {
    let (code, out) = run(["rees", "classify", &corpus("square"), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "verdict: quasi_ideal"), "{out}");
}

#[test]
fn files_written_elsewhere_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("mine.json");
    std::fs::write(&p, r#"{"n":3,"exponents":[[1,1,0],[0,1,1]]}"#).unwrap();
    let (code, v) = rees(&["analyze", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], json!("mine"));
    assert_eq!(v["certificate"]["verdict"], json!("normal"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rees");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = status(&["validate", &corpus("u24")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("\"valid\": true"));
    assert_eq!(status(&["normality", &corpus("square")]).status.code(), Some(1));
    assert_eq!(status(&["validate", &fixture("malformed")]).status.code(), Some(2));
    assert_eq!(status(&["hilbert", &corpus("square"), "--cap", "1"]).status.code(), Some(3));
}
