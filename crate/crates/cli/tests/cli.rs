use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammafactor")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

#[test]
fn finite_gamma_cycle_two_trivial_is_one_third() {
    let (code, v) = report(&["finite", "--q", "3", "--mode", "gamma", "--cycle-type", "2", "--theta", "0"]);
    assert_eq!(code, 0);
    let e = &v["results"][0];
    assert_eq!(e["gamma"]["q_half_power"], -2);
    assert!((e["complex"][0].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!(e["complex"][1].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn unsupported_q_is_a_usage_error() {
    assert_eq!(run(&["finite", "--q", "11", "--mode", "gamma"]).status.code(), Some(2));
    assert_eq!(run(&["crystal", "--m", "5", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["crystal", "--m", "2", "--n", "3", "--symbolic"]).status.code(), Some(2));
}

#[test]
fn finite_table_has_tsv_and_orthogonality() {
    let (code, v) = report(&["finite", "--q", "3", "--mode", "table"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["failures"], 0);
    let tsv = run(&["--format", "tsv", "finite", "--q", "3", "--mode", "table"]);
    assert_eq!(tsv.status.code(), Some(0));
    assert!(String::from_utf8(tsv.stdout).unwrap().lines().count() > 8);
}

#[test]
fn tsv_for_non_table_is_rejected() {
    assert_eq!(run(&["--format", "tsv", "padic", "L", "--weights", "1"]).status.code(), Some(2));
}

#[test]
fn padic_gamma_matches_oracle() {
    let (code, v) = report(&["padic", "--p", "3", "gamma", "--weights", "1", "--theta-unram", "1.0", "--s", "1.3"]);
    assert_eq!(code, 0);
    assert!(v["results"]["difference"].as_f64().unwrap() < 1e-6);
    assert!(v["results"]["stabilization_increment"].as_f64().unwrap() < 1e-8);
}

#[test]
fn padic_gamma_names_failing_weight() {
    let out = run(&["padic", "gamma", "--weights", "1;-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("λ_2"));
}

#[test]
fn padic_l_rendering() {
    let (code, v) = report(&["padic", "L", "--weights", "1,0;0,1;1,1", "--theta-unram", "0.5,0.7+0.2i"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["rational_function"], "1/((1-z1·X)(1-z2·X)(1-z1z2·X))");
}

#[test]
fn padic_basic_rank_one_is_constant() {
    let (code, v) = report(&["padic", "basic", "--rank", "1", "--weights", "1", "--degree", "6"]);
    assert_eq!(code, 0);
    let cs = v["results"]["coefficients"].as_array().unwrap();
    assert_eq!(cs.len(), 7);
    assert!(cs.iter().all(|c| c["c"] == "1/1"));
    assert_eq!(v["results"]["matches_partition_count"], true);
}

#[test]
fn padic_basic_rank_two_matches_oracle() {
    let (code, v) = report(&["padic", "basic", "--rank", "2", "--degree", "4", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["matches_oracle"], true);
}

#[test]
fn padic_mellin_fixes_basic_function() {
    let (code, v) = report(&["padic", "mellin", "--weights", "1,0;0,1;2,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["schwartz_membership"], true);
    assert_eq!(v["results"]["fourier_fixes_c_rho"], true);
    assert_eq!(v["results"]["fourier_involution"], true);
}

#[test]
fn padic_volume_is_exact() {
    let (code, v) = report(&["padic", "--p", "5", "volume", "--exponents", "1,1", "--form", "0", "--v", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["volume"], "124/625");
}

#[test]
fn padic_calibrate_agrees_with_fixture() {
    let (code, v) = report(&["padic", "calibrate"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["failures"], 0);
}

#[test]
fn crystal_two_by_three_passes() {
    let (code, v) = report(&["crystal", "--m", "2", "--n", "3", "--trials", "25", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(v["seed"], 7);
}

#[test]
fn crystal_symbolic_identity() {
    let (code, v) = report(&["crystal", "--m", "2", "--n", "2", "--symbolic"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["two_by_two_identity"], true);
}

#[test]
fn reports_are_byte_identical() {
    let cmds: [&[&str]; 3] = [
        &["crystal", "--m", "2", "--n", "3", "--trials", "10", "--seed", "7"],
        &["padic", "gamma", "--weights", "1,0;0,1;1,1", "--theta-unram", "0.7+0.2i,1", "--theta-exp", "0,1", "--s", "1.5"],
        &["finite", "--q", "5", "--mode", "gamma"],
    ];
    for c in cmds {
        assert_eq!(run(c).stdout, run(c).stdout, "{c:?}");
    }
}

#[test]
fn custom_fixture_file_is_read() {
    let dir = std::env::temp_dir().join(format!("gammafactor-fixture-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    let text = include_str!("../fixtures/normalization.json").replace("\"tate_eps_normalization\": -1", "\"tate_eps_normalization\": 0");
    std::fs::write(&path, text).unwrap();
    let (code, v) = report(&["--fixtures", path.to_str().unwrap(), "padic", "calibrate"]);
    assert_eq!(code, 1);
    assert_eq!(v["summary"]["failures"], 2);
}
