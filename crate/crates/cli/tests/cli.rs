use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lscat")).args(args).env_remove("LSCAT_LOG").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn invariants_text() {
    let o = lscat(&["invariants", "--group", "F4", "--prime", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("F4 p=2: cup=6 wgt=6 mwgtLower=8\n"));

    let o = lscat(&["invariants", "--group", "g2", "--prime", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("G2 p=3: cup=2 wgt=2 mwgtLower=2\n"));
}

#[test]
fn invariants_json_has_certificate() {
    let o = lscat(&["invariants", "--group", "E7", "--prime", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mwgtLower"], 13);
    assert_eq!(v["certificate"]["m"], 12);
    assert_eq!(v["certificate"]["op"], "P^1");
    assert_eq!(v["certificate"]["valid"], true);
    assert!(v.get("exploratory").is_none());
}

#[test]
fn exploratory_is_marked_uncertified() {
    let o = lscat(&["invariants", "--group", "F4", "--prime", "2", "--exploratory", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mwgtLower"], 8);
    assert_eq!(v["exploratory"]["certified"], false);
}

#[test]
fn strict_mode_keeps_bounds() {
    let o = lscat(&["invariants", "--group", "E6", "--prime", "2", "--strict"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("mwgtLower=10"));
    assert!(stdout(&o).contains("strict-survival"));
}

#[test]
fn homology_cotor_matches() {
    let o = lscat(&["homology", "--mode", "cotor", "--group", "G2", "--prime", "2", "--max-degree", "16"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("cobar-vs-cotor  PASS"));
    assert!(!out.contains("FINDING") && !out.contains("FAIL"));
}

#[test]
fn homology_tor_divided_powers() {
    let o = lscat(&[
        "homology",
        "--mode",
        "tor",
        "--group",
        "G2",
        "--prime",
        "3",
        "--max-degree",
        "16",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "PASS"), "{checks:?}");
    // Γ(a2, a10)
    let dims: Vec<u64> = v["totalDims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2]);
}

#[test]
fn homology_tor_f4_reports_finding() {
    let o = lscat(&[
        "homology",
        "--mode",
        "tor",
        "--group",
        "F4",
        "--prime",
        "2",
        "--max-degree",
        "17",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let finding = v["checks"].as_array().unwrap().iter().find(|c| c["check"] == "bar-vs-loop").unwrap();
    assert_eq!(finding["status"], "FINDING");
    assert!(finding["detail"].as_str().unwrap().starts_with("degree 16:"));
}

#[test]
fn verify_all_passes() {
    let o = lscat(&["verify", "--all", "--max-degree", "14"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("10 entries:"));
    assert!(stdout(&o).contains(" 0 FAIL"));
}

#[test]
fn verify_e8_checks_long_differential() {
    let o = lscat(&["verify", "--group", "E8", "--prime", "2", "--max-degree", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("d15(z47) = x3^16"));
}

#[test]
fn verify_prime_selects_entries() {
    let o = lscat(&["verify", "--prime", "3", "--max-degree", "8", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let groups: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["G2", "F4", "E6", "E7", "E8"]);
}

fn export(group: &str, prime: &str) -> Value {
    let o = lscat(&["export", "--group", group, "--prime", prime]);
    assert_eq!(code(&o), 0);
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exported_entry_verifies_like_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f4.json", &export("F4", "2"));
    let from_file = lscat(&["verify", "--input", &path, "--max-degree", "12"]);
    let built_in = lscat(&["verify", "--group", "F4", "--prime", "2", "--max-degree", "12"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&built_in));
}

#[test]
fn corrupted_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = export("F4", "2");
    v["expected"]["mwgtLower"] = Value::from(9);
    let path = write(dir.path(), "bad-bound.json", &v);
    let o = lscat(&["verify", "--input", &path, "--max-degree", "10"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL     invariants"));

    let mut v = export("G2", "2");
    v["generators"][0]["height"] = Value::from(8);
    let path = write(dir.path(), "bad-height.json", &v);
    let o = lscat(&["verify", "--input", &path, "--max-degree", "10"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL     top-degree"));
}

#[test]
fn unreadable_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"prime\": 2,").unwrap();
    let o = lscat(&["invariants", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = lscat(&["invariants", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&lscat(&["invariants", "--group", "G3", "--prime", "2"])), 2);
    assert_eq!(code(&lscat(&["invariants", "--group", "G2", "--prime", "5"])), 2);
    assert_eq!(code(&lscat(&["homology", "--group", "G2", "--prime", "2"])), 2);
    assert_eq!(code(&lscat(&["report", "--max-degree", "0"])), 2);
    assert_eq!(code(&lscat(&["verify"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_lscat")).args(["report"]).env("LSCAT_LOG", "loud").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn report_formats() {
    let md = lscat(&["report", "--format", "markdown"]);
    assert_eq!(code(&md), 0);
    assert!(stdout(&md).contains("| G2 | 4 | 4 | ≥4 | 4 | ≥4 |"));

    let csv = lscat(&["report", "--format", "csv"]);
    assert!(stdout(&csv).contains("\nE7,2,≥2,≥2,2,≥2,≥2\n"));

    let json = lscat(&["report", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["matchesPublished"], true);
    let certified = v["entries"].as_array().unwrap().iter().filter(|e| e["certificate"].is_object()).count();
    assert_eq!(certified, 5);
}

#[test]
fn report_agrees_with_invariants() {
    let v: Value = serde_json::from_str(&stdout(&lscat(&["report", "--format", "json"]))).unwrap();
    for e in v["entries"].as_array().unwrap() {
        let (g, p) = (e["group"].as_str().unwrap(), e["prime"].to_string());
        let single: Value =
            serde_json::from_str(&stdout(&lscat(&["invariants", "--group", g, "--prime", &p, "--format", "json"])))
                .unwrap();
        assert_eq!(&single, e, "{g} p={p}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["report", "--format", "json"][..],
        &["verify", "--all", "--max-degree", "10"][..],
        &["export", "--group", "E8", "--prime", "3"][..],
    ] {
        assert_eq!(lscat(args).stdout, lscat(args).stdout, "{args:?}");
    }
}
