//! Acceptance suite: one criterion per test, each printing a single
//! pass/fail line (run with `--nocapture` to see them on success).

use gogaut::harness::{run_section4, Config, Status};

fn criterion(label: &str, checks: &[&str]) {
    let cfg = Config::default();
    let filter: Vec<String> = checks.iter().map(|s| s.to_string()).collect();
    let report = run_section4(&cfg, Some(&filter)).expect("check runner failed");
    assert_eq!(report.results.len(), checks.len(), "missing checks for {label}");
    let failed: Vec<String> = report
        .results
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{}: {}", r.name, r.witness))
        .collect();
    let verdict = if failed.is_empty() { "pass" } else { "FAIL" };
    println!("acceptance: {label}: {verdict}");
    assert!(failed.is_empty(), "{label} failed: {}", failed.join(" | "));
}

#[test]
fn criterion_1_phi_squared_reproduction() {
    criterion("phi^2 table, default and 5 random gluing words", &["phi-squared-table"]);
}

#[test]
fn criterion_2_conjugation_formula() {
    criterion("D phi D^-1 table over the full (r,s) grid", &["conjugation-table"]);
}

#[test]
fn criterion_3_commutation_criterion() {
    criterion("commutation with phi iff r = s; always with phi^2", &["commutation-grid"]);
}

#[test]
fn criterion_4_r_realises_phi() {
    criterion("R validates, induces phi, and squares to the twist", &["r-realises-phi"]);
}

#[test]
fn criterion_5_twist_kernel_rank() {
    criterion("twist group rank 2 with independence certificate", &["twist-kernel-rank"]);
}

#[test]
fn criterion_6_mu_and_mccool() {
    criterion("mu kills twists; McCool memberships and the psi pairs", &["mu-and-mccool"]);
}

#[test]
fn criterion_7_length_invariance() {
    criterion("translation length preserved; tree-ball oracle agrees", &["length-invariance"]);
}

#[test]
fn criterion_8_fixed_point_claims() {
    criterion("three fixed-subgroup displays with bounded search", &["fixed-subgroups"]);
}

#[test]
fn criterion_9_oracle_suites() {
    criterion(
        "innerness brute-force agreement and extension relation checks",
        &["inner-oracle", "extension-oracle"],
    );
}
