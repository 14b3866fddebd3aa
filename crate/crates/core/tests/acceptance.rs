//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Run with `cargo test -p pqlab --test acceptance -- --nocapture`.

use pqlab::budget::Budget;
use pqlab::suite::run_criterion;

fn check(id: u8) {
    let outcome = run_criterion(id, &Budget::default()).expect("criterion registered");
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_01_tight_regime_piercing() {
    check(1);
}

#[test]
fn criterion_02_crossing_segments_piercing() {
    check(2);
}

#[test]
fn criterion_03_turan_edge_bound() {
    check(3);
}

#[test]
fn criterion_04_f_vector_upper_bound() {
    check(4);
}

#[test]
fn criterion_05_lp_exact_duality() {
    check(5);
}

#[test]
fn criterion_06_depth_fraction_guarantee() {
    check(6);
}

#[test]
fn criterion_07_weak_net_construct_verify() {
    check(7);
}

#[test]
fn criterion_08_max_clique_approximation() {
    check(8);
}

#[test]
fn criterion_09_union_complexity_lower_bound() {
    check(9);
}

#[test]
fn criterion_10_bound_calculators() {
    check(10);
}
