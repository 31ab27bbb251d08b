//! End-to-end checks of the `etk` binary: flag handling, config files,
//! output formats and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn etk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn grab(line_prefix: &str, text: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(line_prefix))
        .unwrap_or_else(|| panic!("no `{line_prefix}` line in:\n{text}"));
    line.split('=').nth(1).unwrap().trim().parse().unwrap()
}

#[test]
fn solve_coulomb_prints_the_closed_form_values() {
    let out = etk(&[
        "solve", "--potential", "power", "--beta", "-1", "--G", "1", "--N", "3", "--m", "1",
        "--D", "3", "--state", "bgs",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!((grab("E ", &text) + 0.5).abs() < 1e-9, "{text}");
    assert!((grab("rho0", &text) - 3.0).abs() < 1e-9);
    assert!(text.contains("character   = upper-bound"));
}

#[test]
fn phi_reports_the_power_law_value() {
    let out = etk(&["phi", "--potential", "power", "--beta", "-1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!((grab("phi", &stdout(&out)) - 1.0).abs() < 1e-7);
}

#[test]
fn improve_uses_the_computed_phi() {
    let out = etk(&["improve", "--potential", "power", "--beta", "-1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!((grab("E ", &stdout(&out)) + 1.125).abs() < 1e-6);
}

#[test]
fn improvement_fails_loudly_at_d1() {
    let out = etk(&[
        "improve", "--potential", "power", "--beta", "-1", "--D", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("improvement unavailable at D=1"), "{}", stderr(&out));
}

#[test]
fn no_bound_state_is_a_runtime_error() {
    let out = etk(&["solve", "--potential", "gauss", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no bound state"));
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = etk(&["solve", "--potential", "yukawa", "--beta", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_mixed_blend() {
    let out = etk(&["classify", "--potential", "cubic-linear", "--C", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("character   = undefined"));
    assert!(text.contains("b_V sampled = indefinite"));
}

#[test]
fn oracle_reproduces_the_harmonic_reference() {
    let out = etk(&[
        "oracle", "--potential", "power", "--beta", "2", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let e = json["energy"].as_f64().unwrap();
    assert!((e - 3.0 * 6.0f64.sqrt()).abs() < 1e-5, "E = {e}");
    assert!(json["converged"].as_bool().unwrap());
}

#[test]
fn sweep_csv_is_deterministic_and_well_formed() {
    let dir = std::env::temp_dir().join(format!("etk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv_a = dir.join("a.csv");
    let csv_b = dir.join("b.csv");
    let summary = dir.join("s.json");
    for path in [&csv_a, &csv_b] {
        let out = etk(&[
            "sweep", "--figure", "exciton", "--grid", "0.4,0.8,0.2", "--na", "6", "--nb", "6",
            "--max-basis", "200", "--tol-rel", "1e-5",
            "--output", path.to_str().unwrap(),
            "--summary", summary.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read(&csv_a).unwrap();
    let b = std::fs::read(&csv_b).unwrap();
    assert_eq!(a, b, "identical runs must produce identical bytes");

    let text = String::from_utf8(a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(
        lines[0],
        "param,E_oracle,oracle_converged,E_et,E_improved,phi,rho0_et,character,rel_err_et,rel_err_improved"
    );
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 10);
    }
    // summary JSON parses
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert!(s["max_rel_err_et"].as_f64().unwrap() > 0.0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("etk-cli-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg: PathBuf = dir.join("run.json");
    std::fs::write(
        &cfg,
        r#"{"command": "solve", "potential": "power", "beta": -1.0, "G": 1.0, "state": "bgs"}"#,
    )
    .unwrap();

    // command and every parameter from the file
    let out = etk(&["--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!((grab("E ", &stdout(&out)) + 0.5).abs() < 1e-9);

    // flag overrides the file's exponent: -0.5 gives a different energy
    let out = etk(&[
        "solve", "--config", cfg.to_str().unwrap(), "--beta", "-0.5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let e = grab("E ", &stdout(&out));
    assert!((e + 0.5).abs() > 1e-3, "override ignored, E = {e}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_grid_is_a_usage_error() {
    let out = etk(&["sweep", "--figure", "npp", "--grid", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explicit_quantum_numbers_are_accepted() {
    // one unit of orbital excitation raises the Coulomb level
    let out = etk(&[
        "solve", "--potential", "power", "--beta", "-1", "--state", "0,1;0,0",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let e = grab("E ", &stdout(&out));
    // Q = 4 instead of 3: E = -4.5/Q²
    assert!((e + 4.5 / 16.0).abs() < 1e-9, "E = {e}");
}
