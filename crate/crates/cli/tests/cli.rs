use std::path::PathBuf;
use std::process::{Command, Output};

use ellcorr::ellring::{parse_value, Basis, EllValue};
use ellcorr::numerics::{eval_value, ParamPoint};
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ellcorr-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellcorr")).args(["--no-cache"]).args(args).output().unwrap()
}

fn run_cached(cache: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellcorr")).env("ELLCORR_CACHE", cache).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn num(v: &Value) -> f64 {
    v.as_str().map(|s| s.parse().unwrap()).or_else(|| v.as_f64()).unwrap()
}

#[test]
fn trivial_entry_is_one() {
    let o = run(&["correlation", "0", "0", "--kind", "C", "--format", "json"]);
    assert!(o.status.success());
    let v: EllValue = serde_json::from_value(json(&o)["value"].clone()).unwrap();
    assert_eq!(v, EllValue::one(Basis::Pi));
}

#[test]
fn dual_entry_as_json() {
    let o = run(&["correlation", "1", "2", "--kind", "C_d", "--format", "json"]);
    assert!(o.status.success());
    let v: EllValue = serde_json::from_value(json(&o)["value"].clone()).unwrap();
    let want = parse_value(
        "u_h*(s_v^2*(s_h^2*s_v^2-1)/s_h^2*K^2 + (s_v^2-1)/s_h^2*E*K + E^2/s_h^2 \
         + (s_h^2-1)*(s_v^2+1)/s_h^2*E*P - (s_v^2+1)*(s_h^2*s_v^2-1)/s_h^2*K*P)",
        Basis::Pi,
    )
    .unwrap();
    assert_eq!(v, want);
}

#[test]
fn diagonal_entry_as_latex() {
    let o = run(&["correlation", "1", "1", "--kind", "C", "--format", "latex", "--standalone"]);
    let s = stdout(&o);
    assert!(s.starts_with("\\documentclass"), "{s}");
    assert!(s.contains("C(1,1) = ") && s.contains("\\tilde{E}") && s.contains("\\tilde{K}"));
    assert!(!s.contains("\\tilde{\\Pi}"));
}

#[test]
fn eval_row_entry_against_the_oracle() {
    let o = run(&["eval", "0", "1", "--s-h", "0.6", "--s-v", "0.8", "--format", "json"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["oracle"]["method"], "toeplitz_row");
    assert!(r["abs_difference"].as_f64().unwrap() < 1e-12);
}

#[test]
fn eval_isotropic_diagonal_against_the_oracle() {
    let s = "0.70710678118654752440084436210484903928483593768847";
    let o = run(&["eval", "1", "1", "--s-h", s, "--s-v", s, "--format", "json"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["oracle"]["method"], "toeplitz_diag");
    assert!(r["abs_difference"].as_f64().unwrap() < 1e-12);
}

#[test]
fn eval_of_the_constant_entry() {
    let o = run(&["eval", "0", "0", "--s-h", "1.7", "--s-v", "0.3", "--format", "json"]);
    assert_eq!(num(&json(&o)["value"]), 1.0);
}

#[test]
fn wrong_regime_names_the_modulus() {
    let o = run(&["eval", "0", "1", "--kind", "C_d", "--s-h", "1.3", "--s-v", "1.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k = 1.43"));
}

#[test]
fn recursions_suite_is_clean() {
    let o = run(&["verify", "recursions", "--Nmax", "3"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["nmax"], 3);
    assert_eq!(r["schema_version"], 1);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], true, "{c}");
        if let Some(t) = c["detail"].get("residual_terms") {
            assert_eq!(t, 0);
        }
    }
}

#[test]
fn identities_suite() {
    let o = run(&["verify", "identities", "--samples", "100"]);
    assert!(o.status.success());
    let r = json(&o);
    let pi = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "pi_transform").unwrap();
    assert_eq!(pi["detail"]["samples"], 100);
    assert!(pi["detail"]["max_residual"].as_f64().unwrap() < 1e-25);
}

#[test]
fn duality_suite() {
    let o = run(&["verify", "duality"]);
    assert!(o.status.success());
    let r = json(&o);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"] == "duality_involution(2,3)"));
}

#[test]
fn toeplitz_row_oracle_matches_the_nearest_neighbour_form() {
    let o = run(&["oracle", "toeplitz_row", "1", "--s-h", "0.6", "--s-v", "0.8"]);
    let got = num(&json(&o)["result"]["value"]);
    let p = ParamPoint::from_f64(0.6, 0.8, 200).unwrap();
    let c01 = parse_value("u_v*((s_h^2+1)/s_h*P - K/s_h)", Basis::Pi).unwrap();
    assert!((got - eval_value(&c01, &p).unwrap().to_f64()).abs() < 1e-14);
}

#[test]
fn toeplitz_diag_oracle_at_low_temperature_is_e() {
    let o = run(&["oracle", "toeplitz_diag", "1", "--s-h", "1.3", "--s-v", "1.1"]);
    let got = num(&json(&o)["result"]["value"]);
    let p = ParamPoint::from_f64(1.3, 1.1, 200).unwrap();
    let e = eval_value(&EllValue::e(Basis::Pi), &p).unwrap().to_f64();
    assert!((got - e).abs() < 1e-14);
}

#[test]
fn transfer_matrix_drift_shrinks_with_width() {
    let exact = 0.157_844_892_367_917_88;
    let gap = |w: &str| {
        let o = run(&["oracle", "transfer_matrix", "2", "--s-h", "0.6", "--s-v", "0.8", "--width", w]);
        assert!(String::from_utf8_lossy(&o.stderr).contains("finite-width"));
        (json(&o)["value"].as_f64().unwrap() - exact).abs()
    };
    let (g8, g10, g12) = (gap("8"), gap("10"), gap("12"));
    assert!(g10 < g8 / 2.0 && g12 < g10 / 2.0, "{g8} {g10} {g12}");
}

#[test]
fn corrupt_cache_is_reported_and_kept() {
    let dir = scratch("corrupt");
    let cache = dir.join("table.json");
    std::fs::write(&cache, "{\"schema\": \"ellcorr-table\", \"version\": 99}").unwrap();
    let o = run_cached(&cache, &["correlation", "0", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache"));
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), "{\"schema\": \"ellcorr-table\", \"version\": 99}");
}

#[test]
fn cache_is_written_once_and_reused() {
    let dir = scratch("reuse");
    let cache = dir.join("sub").join("table.json");
    assert!(run_cached(&cache, &["--nmax", "2", "correlation", "0", "2"]).status.success());
    let first = std::fs::read(&cache).unwrap();
    let o = run_cached(&cache, &["--nmax", "2", "correlation", "1", "2", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&cache).unwrap(), first);
}

#[test]
fn full_verification_from_a_cold_cache() {
    let dir = scratch("all");
    let cache = dir.join("table.json");
    let report = dir.join("report.json");
    let o = run_cached(&cache, &["verify", "all", "--Nmax", "4", "--output", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["failures"], 0);
    let suites: std::collections::BTreeSet<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["suite"].as_str().unwrap()).collect();
    assert_eq!(suites.len(), 7, "{suites:?}");
    assert!(cache.exists());
}
