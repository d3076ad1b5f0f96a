//! End-to-end checks of the towerlab binary: output bytes, exit codes,
//! determinism across worker counts.

use std::process::{Command, Output};

fn towerlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(args)
        .env_remove("TOWERLAB_Q")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn table_q3_golden() {
    let out = towerlab(&["table", "--q", "3", "--max-n", "5"]);
    assert!(out.status.success());
    let expected = "\
n,ext_degree,deg_diff,genus,N,nu_num,nu_den,lambda_num,lambda_den,dv_bound_met
0,1,,0,10,10,1,,,
1,2,2,0,10,5,1,,,
2,4,2,0,10,5,2,,,
3,8,4,1,16,2,1,16,1,true
4,16,4,3,28,7,4,28,3,true
5,32,8,9,48,3,2,16,3,true
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn census_is_deterministic_across_workers() {
    let base = towerlab(&["census", "--q", "5", "--max-n", "3"]);
    assert!(base.status.success());
    for workers in ["2", "5"] {
        let other = towerlab(&["census", "--q", "5", "--max-n", "3", "--workers", workers]);
        assert!(other.status.success());
        assert_eq!(out_bytes(&base), out_bytes(&other), "workers={workers}");
    }
}

fn out_bytes(o: &Output) -> &[u8] {
    &o.stdout
}

#[test]
fn census_single_level_and_base_field() {
    let out = towerlab(&["census", "--q", "3", "--n", "3"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.lines().nth(1).unwrap().starts_with("3,8,2,6,0,16,2,"));

    let out = towerlab(&["census", "--q", "3", "--n", "2", "--constant-field", "q"]);
    assert!(out.status.success());
    assert!(stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("2,0,2,2,0,4,"));
}

#[test]
fn genus_json_is_schema_versioned() {
    let out = towerlab(&["genus", "--q", "4", "--max-n", "2", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "genus");
    assert_eq!(doc["rows"][2]["genus"], "4");
    assert_eq!(doc["rows"][2]["gamma_num"], "4");
    assert_eq!(doc["rows"][2]["gamma_den"], "9");
}

#[test]
fn classify_q3_n2() {
    let out = towerlab(&["classify", "--q", "3", "--n", "2"]);
    assert!(out.status.success());
    let expected = "\
t,alpha,common_e,aggregate_degree,pivot_index
-1,0,2,1,4
-1,1,2,1,4
0,1,2,2,2
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn verify_gate_exit_codes() {
    let out = towerlab(&["verify", "--q", "3", "--max-n", "3"]);
    assert!(out.status.success(), "verify should pass cleanly");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["mismatches"], 0);
    assert!(doc["outcomes"].as_array().unwrap().len() > 10);
}

#[test]
fn bad_input_exits_two() {
    let out = towerlab(&["table", "--q", "2", "--max-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = towerlab(&["census", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = towerlab(&["table", "--tower", "gst1", "--q", "5", "--max-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_variables_mirror_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(["genus", "--max-n", "1"])
        .env("TOWERLAB_Q", "3")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(stdout(&out).contains("1,2,2,0,0,1"));
}

#[test]
fn shifted_tower_matches_plain_counts() {
    let plain = towerlab(&["table", "--q", "3", "--max-n", "3"]);
    let shifted = towerlab(&[
        "table",
        "--tower",
        "gst2-shifted",
        "--q",
        "3",
        "--shift",
        "2",
        "--max-n",
        "3",
    ]);
    assert!(plain.status.success() && shifted.status.success());
    assert_eq!(stdout(&plain), stdout(&shifted));
}
