//! End-to-end tests that spawn the real binary.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_specquad"))
        .args(args)
        .output()
        .expect("binary spawns");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn csv_rows(stdout: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = stdout.lines();
    assert_eq!(lines.next().expect("csv header"), header);
    lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn eval_k_converges_and_prints_grouped_digits() {
    let (code, out, _) = run(&["eval", "--function", "k", "--z", "0.1"]);
    assert_eq!(code, 0);
    assert!(out.contains("2.42706 90247 02016"), "stdout:\n{out}");
    assert!(out.contains("converged    yes"));
}

#[test]
fn eval_gamma_complex_matches_reference() {
    let (code, out, _) = run(&[
        "eval", "--function", "gamma", "--z-re", "1", "--z-im", "10", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let re = v["value_re"].as_f64().unwrap();
    let im = v["value_im"].as_f64().unwrap();
    let (ref_re, ref_im) = (3.918929270881377e-7f64, 1.1284479695846293e-6);
    let scale = (ref_re * ref_re + ref_im * ref_im).sqrt();
    assert!(((re - ref_re).powi(2) + (im - ref_im).powi(2)).sqrt() <= 5e-12 * scale);
    assert_eq!(v["converged"], true);
}

#[test]
fn zeta_left_of_one_is_a_domain_error() {
    let (code, _, err) = run(&["eval", "--function", "zeta", "--z-re", "0.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("Re(s) > 1"), "stderr:\n{err}");
}

#[test]
fn starved_halvings_exit_two_and_echo_the_override() {
    let (code, out, _) = run(&["eval", "--function", "k", "--z", "1", "--max-halvings", "1"]);
    assert_eq!(code, 2);
    assert!(out.contains("# override: max-halvings = 1"));
    assert!(out.contains("converged    no"));
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, _) = run(&["eval", "--function", "q", "--z", "1"]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["eval", "--function", "k"]);
    assert_eq!(code, 1);
    assert!(err.contains("missing argument"));
    let (code, _, err) = run(&["eval", "--function", "j", "--nu", "1", "--z", "1", "--route", "contour"]);
    assert_eq!(code, 1);
    assert!(err.contains("--route contour"));
    let (code, _, err) = run(&["eval", "--function", "k", "--z-re", "1", "--z-im", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("real argument"));
}

#[test]
fn help_goes_to_stdout_with_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage:"));
}

#[test]
fn k_table_matches_reference_digits() {
    let (code, out, _) = run(&["table", "--function", "k", "--z", "10", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out, "inv_h,mesh_points,estimate_re,estimate_im");
    let expected = [
        (1.0, 2.289879673052002e-5),
        (2.0, 1.778451687544865e-5),
        (4.0, 1.778006231616017e-5),
        (8.0, 1.778006231616764e-5),
        (16.0, 1.778006231616764e-5),
    ];
    // first row is the h0 = 2 seed level; the reference digits start at h = 1
    assert!(rows.len() > expected.len());
    for (row, (inv_h, est)) in rows[1..].iter().zip(expected) {
        assert_eq!(row[0].parse::<f64>().unwrap(), inv_h);
        let got = row[2].parse::<f64>().unwrap();
        assert!(
            ((got - est) / est).abs() <= 1e-12,
            "inv_h {inv_h}: {got} vs {est}"
        );
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn saturated_table_rows_agree_exactly() {
    let (code, out, _) = run(&[
        "table", "--function", "j", "--nu", "1", "--z", "1", "--tol", "1e-18",
        "--max-halvings", "7", "--format", "csv",
    ]);
    assert_eq!(code, 2); // 1e-18 is below what f64 rounding allows
    let rows = csv_rows(&out, "inv_h,mesh_points,estimate_re,estimate_im");
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[6][0], "32");
    assert_eq!(rows[7][0], "64");
    // saturated levels may still wobble by one ulp
    let a = rows[6][2].parse::<f64>().unwrap();
    let b = rows[7][2].parse::<f64>().unwrap();
    assert!(((a - b) / b).abs() <= 2e-15, "{a} vs {b}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["eval", "--function", "n", "--nu", "1", "--z", "0.1", "--format", "json"],
        vec!["table", "--function", "i", "--nu", "2", "--z", "10", "--format", "csv"],
        vec!["validate", "--only", "zeta", "--format", "csv"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b, "args: {args:?}");
    }
}

#[test]
fn csv_and_json_values_round_trip_to_the_same_bits() {
    let (_, csv, _) = run(&["eval", "--function", "k", "--z", "1", "--format", "csv"]);
    let (_, json, _) = run(&["eval", "--function", "k", "--z", "1", "--format", "json"]);
    let rows = csv_rows(&csv, specquad_cli::output::EVAL_CSV_HEADER);
    let from_csv = rows[0][4].parse::<f64>().unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let from_json = v["value_re"].as_f64().unwrap();
    assert_eq!(from_csv, from_json);
    assert!((from_csv - 4.210244382407082e-1).abs() <= 1e-15);
}

#[test]
fn contour_route_agrees_with_the_real_route() {
    let (code, real, _) = run(&["eval", "--function", "i", "--nu", "2", "--z", "10", "--format", "json"]);
    assert_eq!(code, 0);
    let (code, contour, err) = run(&[
        "eval", "--function", "i", "--nu", "2", "--z", "10", "--route", "contour", "--format", "json",
    ]);
    assert_eq!(code, 0);
    assert!(err.contains("# override: route = contour"));
    let a: serde_json::Value = serde_json::from_str(&real).unwrap();
    let b: serde_json::Value = serde_json::from_str(&contour).unwrap();
    let (a, b) = (a["value_re"].as_f64().unwrap(), b["value_re"].as_f64().unwrap());
    assert!(((a - b) / a).abs() <= 1e-9);
}

#[test]
fn validate_is_green() {
    let (code, out, _) = run(&["validate"]);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 20);
    assert!(!out.contains("FAIL"));
    assert!(out.contains("73 checks: 73 passed, 0 failed"));
}

#[test]
fn validate_only_filters_to_one_group() {
    let (code, out, _) = run(&["validate", "--only", "wronskian", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out, specquad_cli::output::CHECKS_CSV_HEADER);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[0] == "wronskian"));
}

#[test]
fn validate_rejects_unknown_groups() {
    let (code, _, err) = run(&["validate", "--only", "nope"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown check group"));
    assert!(err.contains("wronskian") && err.contains("hankel-decay"));
}

#[test]
fn perturbed_k_fails_the_value_checks_only() {
    let (code, out, _) = run(&["validate", "--perturb-k", "1e-8"]);
    assert_eq!(code, 2);
    let failed: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert!(failed.contains(&"wronskian"));
    assert!(failed.contains(&"cross-product"));
    assert!(!failed.contains(&"gamma-recurrence"));
    assert!(!failed.contains(&"zeta"));
    assert!(!failed.contains(&"ode"));
}
