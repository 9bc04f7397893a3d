//! Acceptance criteria 1–12, one test and one PASS/FAIL line each.

use fracinv::verify::{run_criterion, VerifyOptions};

fn criterion(id: usize) {
    let o = run_criterion(id, VerifyOptions::default()).unwrap();
    let mut out = format!(
        "criterion {:>2} {:<40} {} ({:.1}s)\n",
        o.id,
        o.name,
        if o.passed { "PASS" } else { "FAIL" },
        o.seconds
    );
    for line in &o.detail {
        out.push_str(&format!("    {line}\n"));
    }
    print!("{out}");
    assert!(o.passed, "criterion {id} failed:\n{out}");
}

#[test]
fn criterion_01_triple_construction() {
    criterion(1);
}

#[test]
fn criterion_02_eigen_identities() {
    criterion(2);
}

#[test]
fn criterion_03_starred_orthogonality() {
    criterion(3);
}

#[test]
fn criterion_04_endpoint_hypergeometric() {
    criterion(4);
}

#[test]
fn criterion_05_fractional_oracle() {
    criterion(5);
}

#[test]
fn criterion_06_ftc_reconstruction() {
    criterion(6);
}

#[test]
fn criterion_07_order_limits() {
    criterion(7);
}

#[test]
fn criterion_08_maximum_principle() {
    criterion(8);
}

#[test]
fn criterion_09_extension_problem() {
    criterion(9);
}

#[test]
fn criterion_10_spectral_suite() {
    criterion(10);
}

#[test]
fn criterion_11_moment_functional() {
    criterion(11);
}

#[test]
fn criterion_12_semigroup_axioms() {
    criterion(12);
}
