use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wtoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wtoric"))
        .args(args)
        .env_remove("WTORIC_RANK_CAP")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn version() {
    let out = wtoric(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("wtoric "));
}

#[test]
fn hexagon_run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "a2.json",
        r#"{"type_label":"A2","lambda_set":[[1,1]],"K":[1,2],"checks":["all"]}"#,
    );
    let first = dir.path().join("r1.json");
    let out = wtoric(&["run", &cfg, "--out", first.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let again = wtoric(&["run", &cfg]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(std::fs::read(&first).unwrap(), again.stdout);

    let r = report_of(&again);
    assert_eq!(r["passed"], true);
    assert_eq!(r["field"]["d"], 1);
    assert_eq!(r["dossier"]["all_passed"], true);
    for check in ["classify", "algebra", "characters", "iso", "scaling"] {
        assert_eq!(r["checks"][check], true, "{check}");
    }
    assert_eq!(r["presentations"]["polytope"]["dims"], serde_json::json!([1, 4, 1]));
    assert_eq!(r["presentations"]["quotient"]["sr_generators"].as_array().unwrap().len(), 2);
}

#[test]
fn pentagon_over_sqrt5() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "i25.json",
        r#"{"type_label":"I2(5)","lambda_set":[[1,0]],"K":[1,2],"checks":["all"]}"#,
    );
    let out = wtoric(&["run", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report_of(&out);
    assert_eq!(r["field"]["d"], 5);
    assert_eq!(r["dossier"]["all_passed"], true);
    assert_eq!(r["polytope"]["classification"]["nondegenerate"], false);
}

#[test]
fn empty_k_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "a2.json",
        r#"{"type_label":"A2","lambda_set":[[1,1]],"K":[],"checks":["iso"]}"#,
    );
    let out = wtoric(&["run", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r["quotient"]["num_vertices"], 6);
    assert_eq!(r["facet_orbits"]["subgroup_order"], 1);
}

#[test]
fn degenerate_rank_three_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write_config(
        dir.path(),
        "a3.json",
        r#"{"type_label":"A3","lambda_set":[[1,0,0]],"K":[1],"checks":["classify","iso"]}"#,
    );
    let out = wtoric(&["run", &plain]);
    assert_eq!(out.status.code(), Some(1));
    let r = report_of(&out);
    assert_eq!(r["checks"]["classify"], true);
    assert_eq!(r["checks"]["iso"], false);
    assert!(r["errors"][0]["message"].as_str().unwrap().contains("outside the supported scope"));

    let forced = write_config(
        dir.path(),
        "a3f.json",
        r#"{"type_label":"A3","lambda_set":[[0,1,0]],"K":[1],"checks":["iso"],"force_degenerate":true}"#,
    );
    let r = report_of(&wtoric(&["run", &forced]));
    assert_eq!(r["experimental"], true);
}

#[test]
fn bad_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", r#"{"type_label":"A2","lambda_set":[[1,1]],"K":[5],"checks":["all"]}"#);
    assert_eq!(wtoric(&["run", &bad]).status.code(), Some(2));
    let junk = write_config(dir.path(), "junk.json", "not json");
    assert_eq!(wtoric(&["run", &junk]).status.code(), Some(2));
    assert_eq!(wtoric(&["run", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_eq!(wtoric(&["example", "octagon"]).status.code(), Some(2));
}

#[test]
fn rank_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "a3.json",
        r#"{"type_label":"A3","lambda_set":[[1,1,1]],"K":[],"checks":["classify"]}"#,
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_wtoric"))
        .args(["run", &cfg])
        .env("WTORIC_RANK_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("rank cap"));
    assert_eq!(wtoric(&["run", &cfg]).status.code(), Some(0));
}

#[test]
fn examples() {
    let hex = wtoric(&["example", "a2-hexagon"]);
    assert_eq!(hex.status.code(), Some(0));
    let text = String::from_utf8_lossy(&hex.stdout);
    assert!(text.contains("J: X_{E0} - X_{E2} - X_{E3} + X_{E5}"));
    assert!(text.contains("phi(Y1) = X_{E2} + X_{E3} + X_{E4}"));

    let pent = wtoric(&["example", "i25-pentagon", "--json"]);
    assert_eq!(pent.status.code(), Some(1));
    let r = report_of(&pent);
    assert_eq!(r["golden"]["matches"], false);
    assert!(r["golden"]["diff"].as_str().unwrap().contains("+Tr(r2) on A^1 = 1"));
}

#[test]
fn selftest_rank_one() {
    let out = wtoric(&["selftest", "--rank-cap", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("1/1 cases passed"));
}
