//! One test per acceptance criterion. Each prints its PASS/FAIL line.

use gstab::acceptance::run;

fn check(id: u8) {
    let r = run(id);
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_rank_one_boundary() {
    check(1);
}

#[test]
fn criterion_02_sheet_distance_law() {
    check(2);
}

#[test]
fn criterion_03_a2_limit_slicings() {
    check(3);
}

#[test]
fn criterion_04_mass_additivity() {
    check(4);
}

#[test]
fn criterion_05_metric_axioms() {
    check(5);
}

#[test]
fn criterion_06_hn_stabilization() {
    check(6);
}

#[test]
fn criterion_07_massless_subcategory() {
    check(7);
}

#[test]
fn criterion_08_limiting_support_invariance() {
    check(8);
}

#[test]
fn criterion_09_quotient_validation() {
    check(9);
}

#[test]
fn criterion_10_injectivity() {
    check(10);
}

#[test]
fn criterion_11_brute_force_oracles() {
    check(11);
}
