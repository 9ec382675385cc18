//! Acceptance suite: every small-case bound the toolkit promises, run end to
//! end through the presets. One pass/fail line is printed per criterion
//! (visible with `cargo test --test acceptance -- --nocapture`); a criterion
//! fails loudly with the offending cases.
//!
//! All comparisons are exact integer equalities unless a case states an
//! inequality. The expensive searches run with all cores and symmetry
//! pruning, which the invariant suite separately proves observationally
//! equivalent to the plain enumeration.

use signrep::preset::{run_preset, CaseStatus, PresetContext, RunReport};

fn ctx() -> PresetContext {
    PresetContext {
        slow: true,
        seed: 0,
        threads: Some(0),
    }
}

fn run_criterion(number: u8, description: &str, presets: &[&str]) {
    let mut failures = String::new();
    let mut reports: Vec<RunReport> = Vec::new();
    for name in presets {
        let report = run_preset(name, &ctx()).unwrap_or_else(|e| {
            panic!("criterion {number}: preset {name} failed to run: {e}")
        });
        for case in &report.cases {
            if case.status == CaseStatus::Fail {
                failures.push_str(&format!(
                    "  [{}] {} ({}): computed {} expected {} -- {}\n",
                    name, case.name, case.params, case.computed, case.expected, case.claim
                ));
            }
            // with slow enabled nothing may be skipped
            assert_ne!(
                case.status,
                CaseStatus::Skip,
                "criterion {number}: case skipped despite slow mode"
            );
        }
        reports.push(report);
    }
    let pass = reports.iter().all(|r| r.pass);
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    println!(
        "criterion {number:>2}: {} ({cases} cases) - {description}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} failed:\n{failures}");
}

#[test]
fn c01_hypercube_parity_sparsity_and_degree() {
    run_criterion(
        1,
        "minimum sparsity 2^n and degree n for sign representations of parity on {0,1}^n, n <= 3",
        &["dsp2"],
    );
}

#[test]
fn c02_coefficient_sign_census() {
    run_criterion(
        2,
        "every wrong-sign coefficient system is infeasible with a verified Farkas ray, n <= 3",
        &["sign2"],
    );
}

#[test]
fn c03_mary_bound() {
    run_criterion(
        3,
        "degree-capped sparsity m^n on {0,1,2}^n and the m-ary construction matrix",
        &["dspm"],
    );
}

#[test]
fn c04_degree_corollary() {
    run_criterion(
        4,
        "minimum total degree n(m-1) = 4 for sign representations on {0,1,2}^2",
        &["degree-corollary"],
    );
}

#[test]
fn c05_unrestricted_degree_lower_bound() {
    run_criterion(
        5,
        "any-degree sparsity n+1 on {1,2}^n with the geometric witness, and >= 5 at m=3",
        &["general-lower"],
    );
}

#[test]
fn c06_weak_representations() {
    run_criterion(
        6,
        "weak sparsity (m-1)^n on {0..m-1}^n, m^n on {1..m}^n, weak degree n on {0,1}^n",
        &["weak"],
    );
}

#[test]
fn c07_univariate_weak_roots() {
    run_criterion(
        7,
        "univariate weak witnesses show >= m-2 roots in (0, m-1] in sign data and Descartes bound",
        &["weak-roots"],
    );
}

#[test]
fn c08_vandermonde_suites() {
    run_criterion(
        8,
        "1000 positive-determinant instances and 1000 inverse sign-pattern instances",
        &["vandermonde"],
    );
}

#[test]
fn c09_circuit_bounds() {
    run_criterion(
        9,
        "parity circuit minima (2,3,5) beating (3/2)^n, inner-product minima 2^n, block circuits verify",
        &["size-parity", "size-ip"],
    );
}

#[test]
fn c10_constructor_matrix() {
    run_criterion(
        10,
        "every construction family passes verification over its full n <= 4, m <= 4 domain",
        &["constructors"],
    );
}
