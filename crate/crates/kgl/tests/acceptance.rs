//! Acceptance suite: the eleven cross-validation criteria at full scale,
//! one test per criterion, each printing a pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Everything is exact integer equality; there are no tolerances to tune.
//! Scales: the rank-2 oracle grid is `[-2,3]^4` (1296 cases), the rank-1
//! grid `[-5,5]^2`, the Weyl/GT box `[0,4]^n` for `n <= 4`, 200 samples
//! for the randomized criteria, 100 samples per rank for the toric
//! consistency check, and 1000 coverage samples per rank for fan sanity.

use kgl::selftest::*;

fn assert_criterion(outcome: CriterionOutcome) {
    println!("[acceptance] {}", outcome.render());
    assert!(outcome.passed, "{}", outcome.render());
}

#[test]
fn criterion_01_rank_two_oracle_grid() {
    // decompose total == blow-up model oracle on all of [-2,3]^4.
    assert_criterion(criterion_01_oracle_grid_n2(2));
}

#[test]
fn criterion_02_rank_one_oracle_grid() {
    // decompose total == max(0, m0 + l0 + 1) on [-5,5]^2.
    assert_criterion(criterion_02_oracle_grid_n1());
}

#[test]
fn criterion_03_hyperplane_pullback_dimensions() {
    // m = (k,k), l = (0,0) gives C(k+4, 4) = 1, 5, 15, 35, 70.
    assert_criterion(criterion_03_hyperplane_powers());
}

#[test]
fn criterion_04_weyl_equals_gelfand_tsetlin() {
    assert_criterion(criterion_04_weyl_gt());
}

#[test]
fn criterion_05_closed_orbit_singletons() {
    // |A| <= 1 on every closed orbit over the rank-2 grid, and any
    // element matches the closed-orbit weight formula.
    assert_criterion(criterion_05_closed_orbit_singleton(2));
}

#[test]
fn criterion_06_restriction_accounting_random() {
    assert_criterion(criterion_06_restriction_accounting(200));
}

#[test]
fn criterion_07_inclusion_monotonicity_random() {
    assert_criterion(criterion_07_inclusion_monotonicity(200));
}

#[test]
fn criterion_08_toric_divisor_consistency() {
    // Coefficient rule vs divisor formula, ranks 1..5, 100 samples each.
    assert_criterion(criterion_08_toric_consistency(100, false));
}

#[test]
fn criterion_09_non_ampleness_sweep() {
    // Every nondecreasing a in [-2,2]^n, n = 2, 3.
    assert_criterion(criterion_09_non_ampleness());
}

#[test]
fn criterion_10_fan_counts_and_coverage() {
    assert_criterion(criterion_10_fan_sanity());
}

#[test]
fn criterion_11_picard_relation_and_dualizing_class() {
    assert_criterion(criterion_11_picard());
}
