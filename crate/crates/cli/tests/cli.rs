use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gkdefect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkdefect"))
        .args(args)
        .env_remove("GKDEFECT_PRECISION")
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn gaussian_gross_defect() {
    let out = gkdefect(&["defect", "--kind", "gross", "--quadratic", "-1", "--prime", "5", "--precision", "50", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["report"]["defect_upper_bound"], 0);
    assert_eq!(v["report"]["certified"], true);
}

#[test]
fn sextic_is_case_d() {
    let f = fixture("s3_sextic_over_qi");
    let v = json(&gkdefect(&["classify-gk", "--fixture", &f, "--format", "json"]));
    assert_eq!(v["report"]["case"], "d");
}

#[test]
fn inert_prime_fails_validation() {
    let doc = gkdefect(&["quadratic", "--d", "-1", "--prime", "5"]);
    assert!(doc.status.success());
    let text = String::from_utf8(doc.stdout).unwrap().replace("p = 5", "p = 7");
    assert!(text.contains("p = 7"));
    let path = scratch("gaussian_inert.toml", &text);
    let out = gkdefect(&["validate", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p = 7"));
}

#[test]
fn corpus_validates() {
    for name in ["zeta8_over_qi", "cyclic_cubic_7", "cyclic_cubic_13", "s3_sextic_over_qi"] {
        let out = gkdefect(&["validate", "--fixture", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn structured_output_is_deterministic() {
    let args = [
        "scan", "--quadratic", "-3", "--prime", "7", "--sampler", "random:20", "--seed", "11", "--format", "json",
    ];
    let a = gkdefect(&args);
    let b = gkdefect(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let f1 = fixture("zeta8_over_qi");
    let f2 = fixture("cyclic_cubic_7");
    let batch = ["defect", "--kind", "leopoldt", "--fixture", &f1, "--fixture", &f2, "--format", "json"];
    assert_eq!(gkdefect(&batch).stdout, gkdefect(&batch).stdout);
}

#[test]
fn envelope_keys() {
    let v = json(&gkdefect(&["scan", "--quadratic", "-1", "--prime", "5", "--sampler", "grid:3", "--seed", "4", "--format", "json"]));
    for k in ["schema_version", "command", "fixture", "fixture_sha256", "p", "N", "seed", "report"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["seed"], 4);
    assert_eq!(v["N"], 50);
    assert_eq!(v["fixture_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn scan_csv_columns() {
    let out = gkdefect(&["scan", "--quadratic", "-1", "--prime", "13", "--sampler", "grid:2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("slope_digits,rank,saturated,defect"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gkdefect"))
        .args(["defect", "--kind", "gross", "--quadratic", "-1", "--prime", "5", "--format", "json"])
        .env("GKDEFECT_PRECISION", "30")
        .output()
        .unwrap();
    assert_eq!(json(&out)["N"], 30);
}

#[test]
fn exit_codes() {
    let low = gkdefect(&["defect", "--kind", "gross", "--quadratic", "-1", "--prime", "5", "--precision", "9"]);
    assert_eq!(low.status.code(), Some(1));
    let capacity = gkdefect(&[
        "probe", "--lambda", "rational:3/10", "--prime", "7", "--precision", "10", "--degree", "8", "--height", "10000000000",
    ]);
    assert_eq!(capacity.status.code(), Some(2));
    let bad = gkdefect(&["defect", "--kind", "other", "--quadratic", "-1", "--prime", "5"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(gkdefect(&["--help"]).status.code(), Some(0));
}

#[test]
fn theta_six_exponentials() {
    let doc = r#"
symbols = ["a", "b", "c", "d", "e", "f"]
entries = [["a", "b"], ["c", "d"], ["e", "f"]]

[values]
prime = 7
logs = { a = "2", b = "3", c = "5", d = "11", e = "13", f = "17" }
"#;
    let path = scratch("six.toml", doc);
    let v = json(&gkdefect(&["theta", "--input", path.to_str().unwrap(), "--six-exponentials", "--format", "json"]));
    let r = &v["report"];
    assert_eq!(r["theta"], "2/3");
    assert_eq!(r["rank_lower_bound"], 2);
    assert_eq!(r["numeric_rank"], 2);
    assert_eq!(r["six_exponentials"]["alarm"], false);
    assert_eq!(v["p"], 7);
}

#[test]
fn probe_finds_quadratic_root() {
    let v = json(&gkdefect(&["probe", "--lambda", "root:-2,0,1", "--prime", "7", "--degree", "3", "--height", "100", "--format", "json"]));
    assert_eq!(v["report"]["relation"], serde_json::json!(["-2", "0", "1"]));
}

#[test]
fn invariants_cover_every_character() {
    let v = json(&gkdefect(&["invariants", "--fixture", &fixture("zeta8_over_qi"), "--format", "json"]));
    let rows = v["report"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["character"], "1");
    assert!(rows.iter().all(|r| r["d_plus"].as_u64() <= r["d"].as_u64()));
}
