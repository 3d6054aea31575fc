use std::process::{Command, Output};

use serde_json::Value;

fn coxpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxpd")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn enumerate_rademacher() {
    let out = coxpd(&["enumerate", "--preset", "Rad3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 8);
    assert_eq!(v["layer_sizes"], serde_json::json!([1, 3, 3, 1]));
}

#[test]
fn riesz_grid_on_s4_is_psd() {
    let out = coxpd(&["pd-check", "--preset", "A3", "--fn", "riesz", "--grid", "0:1:1/4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 125);
    assert!(results.iter().all(|r| r["status"] == "PSD_exact"));
}

#[test]
fn failing_assertion_sets_exit_code() {
    let out = coxpd(&["pd-check", "--preset", "A2", "--fn", "length-exp", "--grid", "-2:1:1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("assertion failed") && err.contains("witness"), "{err}");
    let ok = coxpd(&["pd-check", "--preset", "A2", "--fn", "length-exp", "--grid", "-2", "--expect", "not-psd"]);
    assert!(ok.status.success());
}

#[test]
fn bad_input_is_an_error() {
    let out = coxpd(&["enumerate", "--preset", "Q7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn affine_a2_growth() {
    let out = coxpd(&["growth", "--preset", "Atilde2", "--radius", "6", "--at", "-1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["series"], "(1 + t + t^2)/(1 - 2t + t^2)");
    assert_eq!(v["value"], "1/4");
    assert_eq!(v["layer_counts"], serde_json::json!([1, 3, 6, 9, 12, 15, 18]));
}

#[test]
fn csv_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let out = coxpd(&["khinchine", "--preset", "A3", "--format", "csv", "--emit-plotdata", plot.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,lhs,mid,ratio,ratio_over_sqrt_p\n"));
    assert_eq!(text.lines().count(), 5);
    let points = std::fs::read_to_string(&plot).unwrap();
    assert_eq!(points.lines().count(), 4);
    assert!(points.lines().all(|l| l.split(',').count() == 2));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["chromatic", "--preset", "B3", "--seed", "11"];
    let a = coxpd(&args);
    let b = coxpd(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = coxpd(&["chromatic", "--preset", "B3", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn eng_on_b2() {
    let out = coxpd(&["eng", "--preset", "I2(4)"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["subsets"].as_array().unwrap().len(), 4);
}

#[test]
fn pairpartitions_and_moments() {
    assert!(coxpd(&["pairpart-verify", "--n", "4"]).status.success());
    assert!(coxpd(&["free-moments", "--n", "4"]).status.success());
    let tri = coxpd(&["pairpart-verify", "--n", "3", "--triangle"]);
    let text = String::from_utf8(tri.stdout).unwrap();
    assert!(text.contains("3,2,2"), "{text}");
    let too_big = coxpd(&["pairpart-verify", "--n", "9"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn moments_and_simplex() {
    let gauss = coxpd(&["moments-feasible", "--exp-power", "1,2"]);
    assert!(gauss.status.success());
    assert_eq!(json(&gauss)["moments"]["verdict"], "Infeasible");
    let simplex = coxpd(&["radial-simplex", "--profile", "1,0,-1"]);
    assert!(simplex.status.success());
    assert_eq!(json(&simplex)["decomposition"]["feasible"], true);
}

#[test]
fn reproduce_prints_checklist() {
    let out = coxpd(&["reproduce", "--criterion", "9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("criterion  9 PASS"));
    let alias = coxpd(&["reproduce-paper", "--criterion", "5", "--format", "json"]);
    assert!(alias.status.success());
    assert_eq!(json(&alias)["criteria"][0]["pass"], true);
}

#[test]
fn infinite_dihedral_refutations() {
    let out = coxpd(&["dihedral-region", "--grid", "-1:1:1", "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(!v["refutations"].as_array().unwrap().is_empty());
}
