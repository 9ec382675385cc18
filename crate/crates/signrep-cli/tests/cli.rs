//! End-to-end tests of the command-line surface: exit codes, JSON schemas,
//! file round trips, and byte-level determinism of structured output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn signrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn temp_file(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("signrep-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let pass = signrep(&[
        "verify", "--poly", "1 - 2*x1", "--target", "parity", "--grid", "0..1", "--n", "1",
        "--kind", "sign",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    let report = stdout_json(&pass);
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(report["zero_count"], serde_json::json!(0));

    let fail = signrep(&[
        "verify", "--poly", "x1", "--target", "parity", "--grid", "0..1", "--n", "1", "--kind",
        "sign",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    let report = stdout_json(&fail);
    assert_eq!(report["pass"], serde_json::json!(false));
    assert!(report["counterexample"]["point"].is_array());

    let error = signrep(&[
        "verify", "--poly", "x1 +", "--target", "parity", "--grid", "0..1", "--n", "1", "--kind",
        "sign",
    ]);
    assert_eq!(error.status.code(), Some(2));
}

#[test]
fn verify_weak_and_ip_targets() {
    let weak = signrep(&[
        "verify", "--poly", "x1*x2", "--target", "parity", "--grid", "0..1", "--n", "2",
        "--kind", "weak",
    ]);
    assert_eq!(weak.status.code(), Some(0));
    assert_eq!(stdout_json(&weak)["zero_count"], serde_json::json!(3));

    // 1 - 2 x1 y1 sign represents inner product on one pair
    let ip = signrep(&[
        "verify", "--poly", "1 - 2*x1*x2", "--target", "ip", "--grid", "0..1", "--n", "1",
        "--kind", "sign",
    ]);
    assert_eq!(ip.status.code(), Some(0));
}

#[test]
fn construct_families_and_listing() {
    let list = signrep(&["construct", "--list"]);
    let text = String::from_utf8(list.stdout).unwrap();
    for name in ["hypercube", "mary", "geometric", "weak-sparse", "weak-product"] {
        assert!(text.contains(name), "missing {name} in listing");
    }

    let mary = signrep(&["construct", "--family", "mary", "--n", "1", "--m", "3"]);
    assert_eq!(String::from_utf8(mary.stdout).unwrap().trim(), "x1^2 - 2*x1 + 3/4");

    let verified = signrep(&[
        "construct", "--family", "geometric", "--n", "3", "--verify",
    ]);
    assert_eq!(verified.status.code(), Some(0));

    let weak_product = signrep(&[
        "construct", "--family", "weak-product", "--grid", "1..2", "--n", "2", "--format", "json",
    ]);
    let poly = stdout_json(&weak_product);
    assert_eq!(poly["dimension"], serde_json::json!(2));

    let missing = signrep(&["construct", "--family", "mary", "--n", "1"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad_alpha = signrep(&[
        "construct", "--family", "mary", "--n", "1", "--m", "3", "--alphas", "3/2,7/4",
    ]);
    assert_eq!(bad_alpha.status.code(), Some(2));
}

#[test]
fn minsparsity_reports_and_is_deterministic() {
    let args = [
        "minsparsity", "--target", "parity", "--grid", "0..1", "--n", "2", "--degcap", "1",
        "--kind", "sign", "--audit",
    ];
    let first = signrep(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let report = stdout_json(&first);
    assert_eq!(report["k"], serde_json::json!(4));
    assert_eq!(report["audited"], serde_json::json!(true));
    assert!(report["witness_text"].is_string());
    assert!(report["stats"]["lps_solved"].as_u64().unwrap() >= 1);

    // byte-identical stdout across runs, also with workers
    let second = signrep(&args);
    assert_eq!(first.stdout, second.stdout);
    let mut with_threads: Vec<&str> = args.to_vec();
    with_threads.extend(["--parallel", "2"]);
    let third = signrep(&with_threads);
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn minsparsity_exports_certificates() {
    let path = temp_file("certs.jsonl");
    let out = signrep(&[
        "minsparsity", "--target", "parity", "--grid", "0..2", "--n", "1", "--degcap", "2",
        "--kind", "weak", "--export-certs", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["k"], serde_json::json!(2));
    let text = std::fs::read_to_string(&path).unwrap();
    // witness line plus one line per size-1 support
    assert_eq!(text.lines().count(), 1 + 3);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["certificate"]["status"].is_string());
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn mindegree_matches_the_small_case() {
    let out = signrep(&[
        "mindegree", "--target", "parity", "--grid", "0..2", "--n", "2", "--degcap", "2",
        "--kind", "sign",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["degree"], serde_json::json!(4));
}

#[test]
fn census_certifies_all_signs() {
    let out = signrep(&["census", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["all_forced"], serde_json::json!(true));
    assert_eq!(report["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn circuit_build_verify_round_trip() {
    let built = signrep(&["circuit", "--op", "build-parity", "--n", "3"]);
    assert_eq!(built.status.code(), Some(0));
    let path = temp_file("parity3.json");
    std::fs::write(&path, &built.stdout).unwrap();
    let verified = signrep(&[
        "circuit", "--op", "verify", "--circuit", path.to_str().unwrap(), "--target", "parity",
    ]);
    assert_eq!(verified.status.code(), Some(0));
    std::fs::remove_file(&path).ok();

    let ip = signrep(&["circuit", "--op", "build-ip", "--n", "2"]);
    let path = temp_file("ip2.json");
    std::fs::write(&path, &ip.stdout).unwrap();
    let verified = signrep(&[
        "circuit", "--op", "verify", "--circuit", path.to_str().unwrap(), "--target", "ip",
    ]);
    assert_eq!(verified.status.code(), Some(0));
    std::fs::remove_file(&path).ok();

    let minsize = signrep(&["circuit", "--op", "minsize", "--n", "2", "--target", "parity"]);
    assert_eq!(minsize.status.code(), Some(0));
    assert_eq!(stdout_json(&minsize)["k"], serde_json::json!(3));
}

#[test]
fn vandermonde_and_descartes_reports() {
    let v = signrep(&["vandermonde", "--points", "0,1,2", "--exponents", "0,1,2"]);
    assert_eq!(v.status.code(), Some(0));
    let report = stdout_json(&v);
    assert_eq!(report["det"], serde_json::json!("2"));
    assert_eq!(report["pattern_matches"], serde_json::json!(true));

    let singular = signrep(&["vandermonde", "--points", "0,1", "--exponents", "1,2"]);
    assert_eq!(stdout_json(&singular)["det"], serde_json::json!("0"));

    let d = signrep(&["descartes", "--poly", "x1^3 - 3*x1^2 + 3*x1 - 1"]);
    let report = stdout_json(&d);
    assert_eq!(report["sign_variations"], serde_json::json!(3));
    assert_eq!(report["positive_root_bound"], serde_json::json!(3));
}

#[test]
fn preset_runs_and_is_deterministic() {
    let list = signrep(&["preset", "--list"]);
    assert!(String::from_utf8(list.stdout).unwrap().contains("dsp2"));

    let args = ["preset", "dsp2", "--format", "json"];
    let first = signrep(&args);
    assert_eq!(first.status.code(), Some(0));
    let report = stdout_json(&first);
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(report["cases"].as_array().unwrap().len(), 6);

    let second = signrep(&args);
    assert_eq!(first.stdout, second.stdout);
    let mut with_threads: Vec<&str> = args.to_vec();
    with_threads.extend(["--parallel", "2"]);
    let third = signrep(&with_threads);
    assert_eq!(first.stdout, third.stdout);

    let csv = signrep(&["preset", "dsp2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 7); // header + 6 cases

    let unknown = signrep(&["preset", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn truth_table_targets_load_from_files() {
    let path = temp_file("table.json");
    std::fs::write(
        &path,
        r#"[{"point": [0], "value": 1}, {"point": [1], "value": 0}]"#,
    )
    .unwrap();
    let spec = format!("table:{}", path.display());
    // -(1 - 2 x1) sign represents the complement of parity on {0,1}
    let out = signrep(&[
        "verify", "--poly", "2*x1 - 1", "--target", &spec, "--grid", "0..1", "--n", "1",
        "--kind", "sign",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_file(&path).ok();
}
