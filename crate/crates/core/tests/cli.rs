use std::path::{Path, PathBuf};
use std::process::{Command as Process, Output};

use pplab::analysis::Dynamics;
use pplab::cli::{execute, execute_scenario, Command, Report, Scenario, EXIT_CHECKS, EXIT_INPUT, EXIT_OK};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn pplab(args: &[&str], scenario: &Path, out: &Path, seed: Option<&str>) -> Output {
    let mut cmd = Process::new(env!("CARGO_BIN_EXE_pplab"));
    cmd.args(args).arg("--scenario").arg(scenario).arg("--out").arg(out);
    cmd.env_remove("PPLAB_SEED");
    if let Some(s) = seed {
        cmd.env("PPLAB_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn read_report(dir: &Path) -> Report {
    Report::from_json(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn full_on_two_cycle_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = pplab(&["full"], &scenario("pielou_two_cycle.json"), dir.path(), None);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&out.stderr));
    let r = read_report(dir.path());
    assert_eq!(r.classification.dynamics, Dynamics::PeriodicAttractive);
    assert!(r.checks_passed);
    assert!(r.orbit.is_some() && r.verification.is_some() && r.simulation.is_some());
    for f in ["trajectory.csv", "plot.csv"] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
    }
}

#[test]
fn analyze_boundary_is_zero_attractive() {
    let dir = tempfile::tempdir().unwrap();
    let out = pplab(&["analyze"], &scenario("pielou_extinction.json"), dir.path(), None);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let r = read_report(dir.path());
    assert_eq!(r.classification.dynamics, Dynamics::ZeroAttractive);
    assert_eq!(r.classification.product_at_zero, 1.0);
    assert!(r.orbit.is_none() && r.verification.is_none() && r.simulation.is_none());
}

#[test]
fn orbit_on_zero_scenario_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = pplab(&["orbit"], &scenario("pielou_extinction.json"), dir.path(), None);
    assert_eq!(out.status.code(), Some(EXIT_CHECKS));
    let r = read_report(dir.path());
    assert!(r.diagnostics.iter().any(|d| d.starts_with("orbit: not applicable")));
    assert!(!r.checks_passed);
}

#[test]
fn bundled_scenarios_run_clean() {
    for name in [
        "pielou_two_cycle.json",
        "pielou_extinction.json",
        "beverton_holt_seasonal.json",
        "rational_two_cycle.json",
    ] {
        let exec = execute(Command::Full, &scenario(name), Some(tempfile::tempdir().unwrap().path()), None)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(exec.exit_code, EXIT_OK, "{name}: {:?}", exec.report.diagnostics);
    }
}

#[test]
fn malformed_scenarios_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{\"period\": 2,"),
        ("unknown_family.json", r#"{"period": 1, "coefficients": [{"family": "logistic", "r": 2}]}"#),
        ("period_mismatch.json", r#"{"period": 3, "coefficients": [{"family": "pielou", "beta": 2}]}"#),
        ("bad_beta.json", r#"{"period": 1, "coefficients": [{"family": "pielou", "beta": -1}]}"#),
        ("unknown_field.json", r#"{"period": 1, "coefficients": [{"family": "pielou", "beta": 2}], "stpes": 5}"#),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = pplab(&["analyze"], &path, dir.path(), None);
        assert_eq!(out.status.code(), Some(EXIT_INPUT), "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{name}");
    }
    let missing = pplab(&["analyze"], &dir.path().join("absent.json"), dir.path(), None);
    assert_eq!(missing.status.code(), Some(EXIT_INPUT));
    let bad_seed = pplab(&["verify"], &scenario("pielou_two_cycle.json"), dir.path(), Some("abc"));
    assert_eq!(bad_seed.status.code(), Some(EXIT_INPUT));
}

#[test]
fn parse_error_names_the_field() {
    let err = Scenario::parse(r#"{"period": 1, "coefficients": [{"family": "pielou", "beta": "x"}]}"#)
        .unwrap_err()
        .to_string();
    assert!(err.contains("coefficients[0]"), "{err}");
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn seed_env_overrides_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario("pielou_two_cycle.json");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    std::fs::create_dir_all(&a).unwrap();
    std::fs::create_dir_all(&b).unwrap();
    pplab(&["verify"], &path, &a, None);
    pplab(&["verify"], &path, &b, Some("99"));
    let (ra, rb) = (read_report(&a), read_report(&b));
    assert_eq!(ra.settings.verify.seed, 42);
    assert_eq!(rb.settings.verify.seed, 99);
    let (va, vb) = (ra.verification.unwrap(), rb.verification.unwrap());
    assert_eq!(vb.seed, 99);
    assert_ne!(va.deviations, vb.deviations);
}

#[test]
fn report_round_trips() {
    let sc = Scenario::load(&scenario("beverton_holt_seasonal.json")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let exec = execute_scenario(Command::Full, &sc, Some(dir.path()), Some(5)).unwrap();
    let text = exec.report.to_json();
    let back = Report::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    assert_eq!(std::fs::read_to_string(dir.path().join("report.json")).unwrap(), text);
}

#[test]
fn repeated_runs_are_identical() {
    let sc = Scenario::load(&scenario("rational_two_cycle.json")).unwrap();
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let exec = execute_scenario(Command::Full, &sc, Some(dir.path()), Some(3)).unwrap();
        let on_disk = std::fs::read(dir.path().join("report.json")).unwrap();
        (exec.report.to_json(), on_disk)
    };
    assert_eq!(run(), run());
}
