use std::path::PathBuf;
use std::process::{Command, Output};

use rankmetric_cli::codefile::CodeFile;
use rankmetric_cli::fixtures;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn rml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rml")).args(args).output().expect("rml runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = rml(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["results"].clone()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("rml-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn dual_of_dual_is_the_canonical_code() {
    for name in ["top_row_3x2", "expansion_vector", "gf4_line"] {
        let once = json(&["dual", &fixture(name)])["code"].clone();
        let path = scratch(&format!("{name}_dual.json"), &once.to_string());
        let twice = json(&["dual", &path])["code"].clone();
        let canon = CodeFile::from_code(&fixtures::load(name));
        assert_eq!(twice, serde_json::to_value(canon).unwrap(), "{name}");
    }
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["info".to_string(), fixture("equal_columns_3x2")],
        vec!["polymatroid".to_string(), fixture("equal_columns_2x2")],
        vec!["verify".into(), "--grid".into(), "q=2;n=2;m=2;samples=5".into(), "--only".into(), "bounds,genweights".into()],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (x, y) = (rml(&a), rml(&a));
        assert!(!x.stdout.is_empty());
        assert_eq!(x.stdout, y.stdout);
    }
}

#[test]
fn expansion_reproduces_the_three_matrices() {
    let r = json(&["expand", &fixture("expansion_vector")]);
    let want = serde_json::to_value(CodeFile::from_code(&fixtures::load("expansion_matrices"))).unwrap();
    assert_eq!(r["code"], want);
    assert_eq!(r["images"].as_array().unwrap().len(), 3);
    assert_eq!(r["basis"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
}

#[test]
fn delta_of_the_equal_columns_code() {
    let r = json(&["genweights", &fixture("equal_columns_2x2"), "--kind", "delta"]);
    assert_eq!(r["weights"]["values"], serde_json::json!([1, 2]));
    let r = json(&["genweights", &fixture("equal_columns_2x2")]);
    assert_eq!(r["weights"]["values"], serde_json::json!([1, 1]));
}

#[test]
fn zero_code_has_d_min_past_the_end() {
    let r = json(&["info", &fixture("zero_2x3")]);
    assert_eq!(r["d_min"], 3);
    assert_eq!(r["dim"], 0);
}

#[test]
fn weights_match_macwilliams() {
    let r = json(&["weights", &fixture("expansion_matrices")]);
    assert_eq!(r["weight_distribution"], serde_json::json!([1, 0, 7]));
    assert_eq!(r["dual_matches_enumeration"], true);
}

#[test]
fn equivalence_finds_a_witness() {
    let r = json(&["equiv", &fixture("expansion_dual_matrices"), &fixture("dual_expansion_matrices")]);
    assert_eq!(r["equivalent"], true);
}

#[test]
fn reducible_modulus_is_rejected() {
    let p = scratch(
        "reducible.json",
        r#"{"kind": "vector", "q": 2, "m": 2, "modulus": [1, 0, 1], "n": 1, "generators": [[[[1]]]]}"#,
    );
    let out = rml(&["info", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("divisible by"), "{err}");
}

#[test]
fn syntax_errors_exit_with_2() {
    let p = scratch("broken.json", "{\"kind\": \"matrix\",\n  \"q\": 2,\n  oops\n}");
    let out = rml(&["info", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn extension_suite_passes() {
    let r = json(&["verify", "--only", "extension"]);
    assert_eq!(r["passed"], true);
    assert!(r["suites"][0]["notes"][0].as_str().unwrap().contains("1008"));
}

#[test]
fn exponent_mutant_fails_verification() {
    let out = rml(&["verify", "--grid", "q=2;n=2;m=2;samples=3", "--only", "macwilliams", "--mutant", "macwilliams-exponent"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("transform equals the dual distribution"), "{text}");
}

#[test]
fn text_report_is_the_default() {
    let out = rml(&["info", &fixture("top_row_3x2")]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("# rml info"));
    assert!(text.lines().any(|l| l.starts_with("d_min") && l.ends_with(" 1")));
}
