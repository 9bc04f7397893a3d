use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fracinv")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, s) = run(args);
    (code, serde_json::from_str(&s).unwrap())
}

#[test]
fn gen_poly_csv_rows() {
    let (code, out) = run(&["gen-poly", "--family", "inv-hermite", "--n", "3", "--method", "rec"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,coeffs");
    assert_eq!(lines.last().unwrap(), &"3,0/1 -12/1 0/1 -8/1");
}

#[test]
fn gen_poly_methods_agree() {
    let args = |m| ["gen-poly", "--family", "inv-jacobi", "--alpha", "1/3", "--beta", "1/4", "--n", "6", "--method", m];
    let rec = run(&args("rec")).1;
    assert_eq!(rec, run(&args("rodrigues")).1);
    assert_eq!(rec, run(&args("genfun")).1);
}

#[test]
fn favard_hermite_moments() {
    let (code, v) = json(&["favard", "--family", "inv-hermite", "--N", "4"]);
    assert_eq!(code, 0);
    let m: Vec<&str> = v["results"]["moments"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(m.join(","), "2/1,0/1,-1/1,0/1,3/2");
    assert_eq!(v["command"], "favard");
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn singular_laguerre_is_a_numeric_failure() {
    let (code, v) = json(&["favard", "--family", "inv-laguerre", "--alpha", "2", "--N", "6"]);
    assert_eq!(code, 1);
    assert!(v["failures"][0].as_str().unwrap().contains("vanishes"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run(&["gen-poly", "--family", "inv-laguerre", "--n", "2", "--alpha", "x/2"]).0, 2);
    assert_eq!(run(&["gen-poly", "--family", "nope", "--n", "2"]).0, 2);
    assert_eq!(run(&["quad", "--measure", "hermite", "--N", "3", "--bogus"]).0, 2);
    assert_eq!(run(&["frac-apply", "--preset", "ou", "--alpha", "1/2", "--func", "exp:1", "--grid", "0:1"]).0, 2);
}

#[test]
fn quad_weights_sum_to_mass() {
    let (code, out) = run(&["quad", "--measure", "hermite", "--N", "5"]);
    assert_eq!(code, 0);
    let total: f64 = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((total - std::f64::consts::PI.sqrt()).abs() < 1e-14);
}

#[test]
fn frac_apply_reproduces_exponential_oracle() {
    let (code, out) = run(&["frac-apply", "--preset", "ou", "--alpha", "1/2", "--func", "exp:4", "--grid", "-1:1:5"]);
    assert_eq!(code, 0);
    for l in out.lines().skip(1) {
        let v: Vec<f64> = l.split(',').map(|t| t.parse().unwrap()).collect();
        assert!((v[2] - 2.0 * v[1]).abs() < 1e-9 * v[1].abs(), "{l}");
    }
}

#[test]
fn extension_check_report() {
    let (code, v) = json(&["extension-check", "--preset", "zero", "--alpha", "1/2", "--func", "exp:1", "--x", "0"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert!((r["trace"]["estimate"].as_f64().unwrap() - 1.0).abs() < 1e-4);
    assert!(r["residual_table"]["observed_order"].as_f64().unwrap() > 1.8);
}

#[test]
fn spectral_demo_is_deterministic() {
    let args = ["spectral-demo", "--basis", "invgauss", "--modes", "6", "--op", "gfun", "--seed", "3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert!(v["results"]["rel_diff"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_subset_reports_per_criterion() {
    let (code, v) = json(&["verify-all", "--only", "4,11"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    let (code, v) = json(&["verify-all", "--only", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0], "criterion 2: eigen-identities");
}
