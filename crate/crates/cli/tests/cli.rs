//! End-to-end tests driving the compiled binary: exit codes, JSON
//! report shape, golden checks, and CSV output.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buresforms"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::create_dir_all(&dir).expect("tmp dir");
    dir
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout should be JSON ({e}); got: {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn all_goldens_passed(report: &Value) -> bool {
    let checks = report["golden_checks"].as_array().expect("check array");
    !checks.is_empty() && checks.iter().all(|c| c["passed"] == Value::Bool(true))
}

const FIRST_FIXTURE: [&str; 16] = [
    "--alpha", "-pi/3", "--tau", "2pi/3", "--a", "3pi/4", "--beta", "2pi/3", "--b", "-2pi/3",
    "--theta", "-2pi/3", "--theta1", "-2pi/3", "--theta2", "-pi/3",
];

const SECOND_FIXTURE: [&str; 16] = [
    "--alpha", "pi/4", "--tau", "3pi/4", "--a", "2pi/3", "--beta", "pi/4", "--b", "pi/4",
    "--theta", "pi/3", "--theta1", "pi/4", "--theta2", "pi/6",
];

const TRANSFER_POINT: [&str; 16] = [
    "--alpha", "2pi/3", "--tau", "2pi/3", "--a", "5pi/6", "--beta", "pi/4", "--b", "pi/3",
    "--theta", "pi/6", "--theta1", "pi/4", "--theta2", "pi/6",
];

#[test]
fn point_at_the_first_fixture_matches_the_tabulated_state() {
    let mut args = vec!["point", "--json"];
    args.extend_from_slice(&FIRST_FIXTURE);
    let out = run(&args);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["command"], "point");
    assert_eq!(report["outputs"]["known_point"], "first-fixture");
    let eigs = report["outputs"]["eigenvalues_descending"]
        .as_array()
        .expect("three eigenvalues");
    let expected = [9.0 / 16.0, 1.0 / 4.0, 3.0 / 16.0];
    for (v, want) in eigs.iter().zip(expected) {
        assert!((v.as_f64().unwrap() - want).abs() < 1e-12);
    }
    assert!(all_goldens_passed(&report));
}

#[test]
fn point_file_with_symbolic_angles_is_equivalent() {
    let dir = tmp_dir("point_file");
    let path = dir.join("first.json");
    fs::write(
        &path,
        r#"{
            "alpha": "-pi/3", "tau": "2pi/3", "a": "3pi/4", "beta": "2pi/3",
            "b": "-2pi/3", "theta": "-2pi/3", "theta1": "-2pi/3", "theta2": "-pi/3"
        }"#,
    )
    .expect("write point file");

    let out = run(&["point", "--json", "--point-file", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = json_of(&out);
    assert_eq!(report["outputs"]["known_point"], "first-fixture");
    assert!(all_goldens_passed(&report));
}

#[test]
fn degenerate_point_is_an_invalid_state_error() {
    let mut args = vec!["point"];
    args.extend_from_slice(&FIRST_FIXTURE);
    // a vanishing eigenvalue: theta1 = 0 collapses the spectrum
    let k = args.iter().position(|a| *a == "--theta1").unwrap();
    args[k + 1] = "0";
    let out = run(&args);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("degenerate state"), "stderr: {stderr}");
}

#[test]
fn conflicting_or_incomplete_point_flags_are_usage_errors() {
    let dir = tmp_dir("conflict");
    let path = dir.join("p.json");
    fs::write(&path, "{}").expect("write file");

    let out = run(&[
        "point",
        "--point-file",
        path.to_str().unwrap(),
        "--alpha",
        "0.5",
    ]);
    assert_eq!(exit_code(&out), 64);

    let out = run(&["point", "--alpha", "0.5", "--tau", "1.0"]);
    assert_eq!(exit_code(&out), 64);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("missing"), "stderr: {stderr}");
}

#[test]
fn omega_at_the_second_fixture_matches_the_tabulation() {
    let mut args = vec!["omega", "--json", "--sign", "+1"];
    args.extend_from_slice(&SECOND_FIXTURE);
    let out = run(&args);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    let coeffs = report["outputs"]["coefficients"]
        .as_array()
        .expect("coefficient array");
    assert_eq!(coeffs.len(), 70);
    let value_of = |indices: [u64; 4]| -> f64 {
        coeffs
            .iter()
            .find(|c| {
                c["indices"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|v| v.as_u64().unwrap())
                    .collect::<Vec<_>>()
                    == indices
            })
            .expect("indices present")["value"]
            .as_f64()
            .unwrap()
    };
    assert!((value_of([1, 2, 3, 4]) - 0.821249).abs() < 1e-5);
    assert_eq!(value_of([2, 3, 4, 5]), 1.0);
    assert_eq!(value_of([5, 6, 7, 8]), 1.0);
    assert!(report["residuals"]["duality_constraints_max"].as_f64().unwrap() < 1e-9);
    assert!(all_goldens_passed(&report));
}

#[test]
fn omega_reports_are_deterministic() {
    let mut args = vec!["omega", "--json", "--sign", "-1"];
    args.extend_from_slice(&SECOND_FIXTURE);

    let strip_wall_time = |out: &Output| -> String {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.contains("wall_time_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = strip_wall_time(&run(&args));
    let second = strip_wall_time(&run(&args));
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn flat_benchmark_has_the_tabulated_clusters() {
    let out = run(&["spectrum", "--json", "--source", "cayley"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    let outputs = &report["outputs"];
    assert_eq!(outputs["eigenvalues"].as_array().unwrap().len(), 28);
    assert_eq!(outputs["eigenvalues_scaled"], Value::Null);
    assert_eq!(outputs["scale"], Value::Null);
    let clusters = outputs["clusters"].as_array().unwrap();
    assert_eq!(clusters.len(), 2);
    assert!((clusters[0][0].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(clusters[0][1], 21);
    assert!((clusters[1][0].as_f64().unwrap() + 3.0).abs() < 1e-10);
    assert_eq!(clusters[1][1], 7);
    assert!(all_goldens_passed(&report));
}

#[test]
fn transferred_spectrum_hits_the_tabulated_pair() {
    let mut args = vec!["spectrum", "--json", "--source", "fixture-q1", "--sign", "-1"];
    args.extend_from_slice(&TRANSFER_POINT);
    let out = run(&args);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    assert_eq!(report["outputs"]["known_point"], "transfer-point");
    let scaled = report["outputs"]["eigenvalues_scaled"]
        .as_array()
        .expect("scaled spectrum");
    assert_eq!(scaled.len(), 28);
    let top = scaled[0].as_f64().unwrap();
    let bottom = scaled[27].as_f64().unwrap();
    assert!((top - 9.83657).abs() < 1e-4 * 9.83657);
    assert!((bottom + 9.73817).abs() < 1e-4 * 9.73817);
    assert!(all_goldens_passed(&report));
}

#[test]
fn sweep_writes_the_figure_csv() {
    let dir = tmp_dir("sweep_fig2");
    let out = run(&["sweep", "--json", "--figure", "2", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    let outputs = &report["outputs"];
    assert_eq!(outputs["coordinate"], "beta");
    assert_eq!(outputs["target"], "leading");
    assert_eq!(outputs["grid_points"], 41);
    assert_eq!(outputs["failures"], 0);
    assert!((outputs["max_computed"].as_f64().unwrap() - 0.821249).abs() < 1e-6);
    assert!(all_goldens_passed(&report));

    let csv_path = dir.join("fig02.csv");
    assert_eq!(outputs["csv_path"].as_str().unwrap(), csv_path.to_str().unwrap());
    let text = fs::read_to_string(&csv_path).expect("csv written");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 42);
    assert_eq!(lines[0], "angle,computed,closed_form,deviation");
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 4);
    }
}

#[test]
fn experimental_sweep_has_no_reference_curve() {
    let dir = tmp_dir("sweep_theta2");
    let out = run(&[
        "sweep",
        "--json",
        "--figure",
        "theta2",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    assert_eq!(report["outputs"]["coordinate"], "theta2");
    assert_eq!(report["outputs"]["max_closed_form_deviation"], Value::Null);
    assert_eq!(report["golden_checks"].as_array().unwrap().len(), 0);
    assert!(dir.join("fig_theta2.csv").exists());
}

#[test]
fn unknown_figure_is_a_usage_error() {
    let dir = tmp_dir("sweep_bad");
    for figure in ["99", "0", "twelve"] {
        let out = run(&["sweep", "--figure", figure, "--out-dir", dir.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 64, "figure {figure}");
    }
}

#[test]
fn bad_sign_and_bad_angle_are_usage_errors() {
    let mut args = vec!["omega", "--sign", "2"];
    args.extend_from_slice(&SECOND_FIXTURE);
    assert_eq!(exit_code(&run(&args)), 64);

    let out = run(&["point", "--alpha", "pie", "--tau", "0", "--a", "0", "--beta", "0",
        "--b", "0", "--theta", "0", "--theta1", "0.7", "--theta2", "0.5"]);
    assert_eq!(exit_code(&out), 64);
}

#[test]
fn acceptance_preserves_the_single_tabulation_defect() {
    let out = run(&["acceptance", "--json"]);
    assert_eq!(exit_code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));

    let report = json_of(&out);
    let outputs = &report["outputs"];
    assert_eq!(outputs["criteria_total"], 11);
    assert_eq!(outputs["criteria_passed"], 10);

    let mut failed: Vec<(u64, String, String)> = Vec::new();
    for criterion in outputs["criteria"].as_array().unwrap() {
        for check in criterion["checks"].as_array().unwrap() {
            if check["passed"] == Value::Bool(false) {
                failed.push((
                    criterion["index"].as_u64().unwrap(),
                    check["name"].as_str().unwrap().to_string(),
                    check["detail"].as_str().unwrap().to_string(),
                ));
            }
        }
    }
    assert_eq!(failed.len(), 1, "failed checks: {failed:?}");
    let (index, name, detail) = &failed[0];
    assert_eq!(*index, 9);
    assert_eq!(
        name,
        "leading coefficient vs closed form along the fifth coordinate"
    );
    assert!(detail.contains("known defect"), "detail: {detail}");
}
