//! The command-line front end: documented examples, exit codes and
//! byte-identical JSON.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = zinbiel::cli::run(
        std::iter::once("zinbiel").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn repo_file(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .display()
        .to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zinbiel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn h2_of_n01() {
    let (code, out, _) = call(&["h2", "--algebra", "N_01"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("dim H2 = 9\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("  Δ")).count(), 9);

    let (_, json, _) = call(&["--format", "json", "h2", "--algebra", "N_01"]);
    let doc: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["h2"], 9);
    assert_eq!(doc["representatives"].as_array().unwrap().len(), 9);
}

#[test]
fn zero_algebra_passes_zinbiel() {
    let (code, out, _) = call(&["identity", "--algebra", "zero", "--dim", "5", "--id", "zinbiel"]);
    assert_eq!(code, 0);
    assert!(out.contains("pass"));
}

#[test]
fn shipped_certificate_verifies_exactly() {
    let cert = repo_file("certs/Z27_to_Z28.json");
    let (code, out, err) = call(&["--format", "json", "degenerate", "--cert", &cert]);
    assert_eq!(code, 0, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verdict"], "verified");
    assert_eq!(doc["mode"], "exact");
}

#[test]
fn json_is_deterministic() {
    let cert = repo_file("certs/Z27_to_Z28.json");
    let runs: [&[&str]; 4] = [
        &["--format", "json", "degenerate", "--cert", &cert, "--mode", "numeric"],
        &["--format", "json", "fingerprint", "--algebra", "Z_14^2"],
        &["--format", "json", "der", "--algebra", "Z_40"],
        &[
            "--format",
            "json",
            "catalog",
            "verify-all",
            "--check",
            "certificates",
            "--check",
            "rsets",
        ],
    ];
    for args in runs {
        let (code, first, _) = call(args);
        let (_, second, _) = call(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(first, second, "{args:?}");
        serde_json::from_str::<Value>(&first).unwrap();
    }
}

#[test]
fn exit_codes_follow_the_verdict() {
    // A wrong basis: the limit differs from the target.
    let bad = scratch(
        "bad.json",
        r#"{"source": {"id": "Z_27"}, "target": {"id": "Z_28"},
            "basis": ["e1", "e2", "e3", "e4", "e5"]}"#,
    );
    let (code, out, _) = call(&["degenerate", "--cert", bad.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("failed"));

    let (code, _, _) = call(&["identity", "--algebra", "S_6", "--id", "associative"]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["extend", "--algebra", "N_01", "--cocycle", "Δ12+2Δ21+Δ13+Δ44"]);
    assert_eq!(code, 0);

    let malformed = scratch("malformed.json", "{ not json");
    assert_eq!(call(&["degenerate", "--cert", malformed.to_str().unwrap()]).0, 2);
    assert_eq!(call(&["ann", "--file", "/no/such/file.json"]).0, 2);
    assert_eq!(call(&["transmogrify"]).0, 2);
    assert_eq!(call(&["h2", "--algebra", "Z_02"]).0, 2, "family without a parameter");
    assert_eq!(call(&["--ladder", "3", "h2", "--algebra", "N_01"]).0, 2);
}

#[test]
fn algebra_files_are_read() {
    let file = scratch(
        "heis.json",
        r#"{"name": "toy", "dim": 3, "entries": [{"i": 1, "j": 1, "k": 2, "c": "1"}, {"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 2, "j": 1, "k": 3, "c": "2"}]}"#,
    );
    let (code, out, err) = call(&["--format", "json", "powers", "--file", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["powers"]["dims"], serde_json::json!([3, 2, 1]));
    let (code, _, _) = call(&["identity", "--file", file.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn catalog_commands() {
    let (_, out, _) = call(&["catalog", "list", "--tag", "one-parameter-family"]);
    assert_eq!(out.lines().count(), 6);
    let (code, out, _) = call(&["--format", "json", "catalog", "get", "--algebra", "Z_02^2"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["id"], "Z_02^2");
    let (code, out, _) = call(&["catalog", "get", "--algebra", "Z_02"]);
    assert_eq!(code, 0);
    assert!(out.contains("alpha"));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_zinbiel");
    let ok = Command::new(bin)
        .args(["identity", "--algebra", "zero", "--dim", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
