//! End-to-end CLI tests: golden JSON payloads, exit codes, and
//! byte-stability of the output.

use assert_cmd::Command;
use predicates::prelude::*;

fn kgl() -> Command {
    Command::cargo_bin("kgl").expect("binary built")
}

const INDEXING: &str =
    r#""indexing":"divisor data 0-based (i in [0,n-1]); weight entries 1-based (i in [1,n])""#;

#[test]
fn decompose_golden_json() {
    kgl()
        .args(["decompose", "--n", "2", "--m", "1,1", "--l", "0,0"])
        .assert()
        .success()
        .stdout(format!(
            "{{\"weights\":[{{\"a\":[0,0],\"b\":[0,0],\"dim\":1}},{{\"a\":[0,1],\"b\":[-1,0],\"dim\":4}}],\"total\":5,{INDEXING}}}\n"
        ));
}

#[test]
fn decompose_trivial_class() {
    kgl()
        .args(["decompose", "--n", "2", "--m", "0,0", "--l", "0,0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"total\":1"));
}

#[test]
fn decompose_on_orbit_closure() {
    kgl()
        .args([
            "decompose",
            "--n",
            "2",
            "--m",
            "1,1",
            "--l",
            "0,0",
            "--I",
            "1",
            "--J",
            "1",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"total\":4"));
}

#[test]
fn decompose_handles_negative_exponents() {
    kgl()
        .args(["decompose", "--n", "2", "--m", "-1,0", "--l", "0,0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"total\":0"));
}

#[test]
fn decompose_empty_orbit_is_input_error() {
    kgl()
        .args([
            "decompose",
            "--n",
            "2",
            "--m",
            "1,1",
            "--l",
            "0,0",
            "--I",
            "0",
            "--J",
            "0",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("orbit intersection is empty"));
}

#[test]
fn decompose_output_is_byte_stable() {
    let run = || {
        kgl()
            .args(["decompose", "--n", "3", "--m", "1,0,2", "--l", "0,1,0"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn restrict_reports_kernel() {
    kgl()
        .args([
            "restrict", "--n", "2", "--m", "1,1", "--l", "0,0", "--I", "1", "--J", "1",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"kernel_dim\":1"))
        .stdout(predicate::str::contains("\"image_dim\":4"))
        .stdout(predicate::str::contains("\"ambient_extra_dim\":0"));
}

#[test]
fn include_identity_case() {
    kgl()
        .args(["include", "--n", "2", "--m", "1,1", "--l", "0,0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"subset_ok\":true"))
        .stdout(predicate::str::contains("\"dim_increase\":0"));
}

#[test]
fn include_monotonicity_violation_is_input_error() {
    kgl()
        .args([
            "include", "--n", "2", "--m", "1,1", "--l", "0,0", "--mp", "2,1", "--lp", "0,0",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("inclusion hypothesis violated"));
}

#[test]
fn ample_of_monomial_bundle() {
    kgl()
        .args(["ample", "--n", "2", "--a", "0,1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"ample\":false"))
        .stdout(predicate::str::contains("\"twisted_ample\":false"))
        .stdout(predicate::str::contains(
            "\"closed_orbit_sections_nonzero\":true",
        ));
}

#[test]
fn ample_positive_degree_on_projective_line() {
    kgl()
        .args(["ample", "--n", "1", "--m", "1", "--l", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"ample\":true"));
}

#[test]
fn ample_trivial_class_is_nef_only() {
    kgl()
        .args(["ample", "--n", "2", "--m", "0,0", "--l", "0,0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"nef\":true"))
        .stdout(predicate::str::contains("\"ample\":false"));
}

#[test]
fn fan_counts_in_json() {
    kgl()
        .args(["fan", "--n", "3"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"n\":3"))
        .stdout(predicate::function(|out: &str| {
            let v: serde_json::Value = serde_json::from_str(out).unwrap();
            v["rays"].as_array().unwrap().len() == 14 && v["cones"].as_array().unwrap().len() == 24
        }));
}

#[test]
fn selftest_small_grid_passes() {
    kgl()
        .args(["selftest", "--grid-radius", "1", "--samples", "40"])
        .assert()
        .code(0)
        .stdout(predicate::str::contains("selftest: PASS"));
}

#[test]
fn selftest_corruption_fails_with_consistency_error() {
    kgl()
        .args([
            "selftest",
            "--grid-radius",
            "0",
            "--samples",
            "5",
            "--corrupt-toric",
        ])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("coefficient rule mismatch"))
        .stdout(predicate::str::contains("selftest: FAIL"));
}

#[test]
fn malformed_flags_are_usage_errors() {
    kgl()
        .args(["decompose", "--n", "2", "--m", "1", "--l", "0,0"])
        .assert()
        .code(2);
    kgl().args(["decompose"]).assert().code(2);
}
