//! Scenario-driven front end used by the `pplab` binary.
//!
//! ```text
//! pplab <analyze|simulate|orbit|verify|full> --scenario <path> [--out <dir>]
//! ```
//!
//! Exit status: 0 when every check passes, 2 when a check fails or the
//! command does not apply to the system, 1 on input or usage errors.
//! `PPLAB_SEED` overrides the scenario's verification seed.

mod report;
mod scenario;

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{HypothesisSummary, OrbitSection, Report, SimulationSection, VerificationSummary};
pub use scenario::{
    default_verify_steps, GridInput, Initial, Outputs, Scenario, Settings, ToleranceInput,
    Tolerances, VerifyInput, VerifySettings, DEFAULT_LEMMA_TOL, DEFAULT_N_INITIALS,
    DEFAULT_REPORT_PATH, DEFAULT_STEPS, DEFAULT_TRAJECTORY_PATH, DEFAULT_VERIFY_TOL,
};

use crate::analysis::{
    check_hypotheses, classify, permanence_bounds, permanence_envelope, Dynamics,
};
use crate::dynamics::{
    check_lemma_relations, extract_orbit, lemma_residuals, residue_limits, simulate,
    verify_attractivity, Trajectory, VerifyOptions, CONTAINMENT_EPS,
};
use crate::models::PeriodicSystem;

pub const SEED_ENV: &str = "PPLAB_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECKS: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Analyze,
    Simulate,
    Orbit,
    Verify,
    Full,
}

impl Command {
    fn wants_simulation(self) -> bool {
        matches!(self, Command::Simulate | Command::Full)
    }

    fn wants_orbit(self) -> bool {
        matches!(self, Command::Orbit | Command::Verify | Command::Full)
    }

    fn wants_verification(self) -> bool {
        matches!(self, Command::Verify | Command::Full)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("scenario parse error at `{field}` (line {line}, column {column}): {message}")]
    Parse {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario field `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error("invalid {SEED_ENV} value `{0}`: expected an unsigned integer")]
    Seed(String),
}

/// What a run produced.
#[derive(Debug)]
pub struct Execution {
    pub report: Report,
    pub exit_code: i32,
    pub written: Vec<PathBuf>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn place(out_dir: Option<&Path>, file: &str) -> PathBuf {
    match out_dir {
        Some(dir) => dir.join(file),
        None => PathBuf::from(file),
    }
}

fn write_csv(
    path: &Path,
    traj: &Trajectory,
    plot: bool,
) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let out = BufWriter::new(file);
    if plot {
        traj.write_plot_csv(out)
    } else {
        traj.write_csv(out)
    }
    .map_err(io_err(path))
}

/// Runs `command` on an already-parsed scenario.
pub fn execute_scenario(
    command: Command,
    scenario: &Scenario,
    out_dir: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<Execution, CliError> {
    let (system, settings) = scenario.resolve(seed_override)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }

    let mut written = Vec::new();
    let mut diagnostics = Vec::new();
    let mut failed = false;
    let classification = classify(&system);
    let periodic = classification.dynamics == Dynamics::PeriodicAttractive;

    let hyp = check_hypotheses(&system, &settings.hypothesis_grid);
    if !hyp.all_ok() {
        failed = true;
        diagnostics.push(format!(
            "hypotheses: monotonicity violated on the grid (worst margin {:e})",
            hyp.worst_violation
        ));
    }

    let (bounds, envelope) = if periodic {
        match (
            permanence_bounds(&system, settings.tolerances.root_tol),
            permanence_envelope(&system, settings.tolerances.root_tol),
        ) {
            (Ok(b), Ok(e)) => (Some(b), Some(e)),
            (Err(e), _) | (_, Err(e)) => {
                failed = true;
                diagnostics.push(format!("bounds: {e}"));
                (None, None)
            }
        }
    } else {
        (None, None)
    };

    let simulation = if command.wants_simulation() {
        run_simulation(
            command,
            &system,
            &settings,
            scenario,
            classification.dynamics,
            out_dir,
            &mut written,
            &mut diagnostics,
            &mut failed,
        )?
    } else {
        None
    };

    let mut orbit_section = None;
    let mut lemma = None;
    let mut verification = None;
    if command.wants_orbit() {
        if !periodic {
            let msg = format!(
                "orbit: not applicable (classification {})",
                classification.dynamics.as_str()
            );
            // `full` adapts to the classification; explicit commands fail.
            if command != Command::Full {
                failed = true;
            }
            diagnostics.push(msg);
        } else {
            match extract_orbit(&system, settings.sim_steps, settings.tolerances.orbit_tol) {
                Err(e) => {
                    failed = true;
                    diagnostics.push(format!("orbit: {e}"));
                }
                Ok(orbit) => {
                    let identity = orbit.product_identity_residual(&system).unwrap_or(f64::NAN);
                    match check_lemma_relations(&system, &orbit) {
                        Ok(l) => {
                            if !(l.max <= settings.tolerances.lemma_tol) {
                                failed = true;
                                diagnostics.push(format!(
                                    "lemma: residual {:e} exceeds {:e}",
                                    l.max, settings.tolerances.lemma_tol
                                ));
                            }
                            lemma = Some(l);
                        }
                        Err(e) => {
                            failed = true;
                            diagnostics.push(format!("lemma: {e}"));
                        }
                    }
                    if command.wants_verification() {
                        let opts = VerifyOptions {
                            n_initials: settings.verify.n_initials,
                            steps: settings.verify.steps,
                            seed: settings.verify.seed,
                            tol: settings.tolerances.verify_tol,
                            burn_in: Some(settings.burn_in),
                        };
                        match verify_attractivity(&system, &orbit, &opts) {
                            Ok(rep) => {
                                if !rep.passed() {
                                    failed = true;
                                    diagnostics.push(format!(
                                        "verify: max deviation {:e} exceeds {:e}",
                                        rep.max_deviation, rep.tol
                                    ));
                                }
                                if !rep.within_envelope {
                                    failed = true;
                                    diagnostics.push(
                                        "verify: tail left the window-product envelope".into(),
                                    );
                                }
                                if !rep.contained {
                                    diagnostics.push(format!(
                                        "verify: tail leaves [x~ prod f(x_bar), x~ prod f(0)] = [{}, {}] (eps {CONTAINMENT_EPS:e})",
                                        rep.bounds.lower, rep.bounds.upper
                                    ));
                                }
                                verification =
                                    Some(VerificationSummary::new(&rep, settings.verify.seed));
                            }
                            Err(e) => {
                                failed = true;
                                diagnostics.push(format!("verify: {e}"));
                            }
                        }
                    }
                    orbit_section = Some(OrbitSection {
                        values: orbit.values,
                        closure_residual: orbit.closure_residual,
                        product_identity_residual: identity,
                    });
                }
            }
        }
    }

    let report = Report {
        command,
        settings,
        classification,
        hypotheses: Some(HypothesisSummary::from(&hyp)),
        bounds,
        envelope,
        orbit: orbit_section,
        lemma,
        verification,
        simulation,
        diagnostics,
        checks_passed: !failed,
    };

    let report_path = place(
        out_dir,
        scenario
            .outputs
            .report_path
            .as_deref()
            .unwrap_or(DEFAULT_REPORT_PATH),
    );
    fs::write(&report_path, report.to_json()).map_err(io_err(&report_path))?;
    written.push(report_path);

    Ok(Execution {
        exit_code: if failed { EXIT_CHECKS } else { EXIT_OK },
        report,
        written,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_simulation(
    command: Command,
    system: &PeriodicSystem,
    settings: &Settings,
    scenario: &Scenario,
    dynamics: Dynamics,
    out_dir: Option<&Path>,
    written: &mut Vec<PathBuf>,
    diagnostics: &mut Vec<String>,
    failed: &mut bool,
) -> Result<Option<SimulationSection>, CliError> {
    let traj = match simulate(
        system,
        settings.initial.x0,
        settings.initial.xm1,
        settings.steps,
    ) {
        Ok(t) => t,
        Err(e) => {
            *failed = true;
            diagnostics.push(format!("simulate: {e}"));
            return Ok(None);
        }
    };

    let csv = scenario.outputs.trajectory_csv_path.as_deref().or(
        (command == Command::Simulate).then_some(DEFAULT_TRAJECTORY_PATH),
    );
    if let Some(name) = csv {
        let path = place(out_dir, name);
        write_csv(&path, &traj, false)?;
        written.push(path);
    }
    if let Some(name) = scenario.outputs.plot_csv_path.as_deref() {
        let path = place(out_dir, name);
        write_csv(&path, &traj, true)?;
        written.push(path);
    }

    // keep at least half of a short run as tail
    let burn_in = settings.burn_in.min(settings.steps / 2);
    let stats = match residue_limits(&traj, burn_in) {
        Ok(s) => s,
        Err(e) => {
            *failed = true;
            diagnostics.push(format!("simulate: {e}"));
            return Ok(None);
        }
    };

    let tail_lemma = match dynamics {
        Dynamics::PeriodicAttractive => lemma_residuals(system, &stats.sup(), &stats.inf()).ok(),
        _ => None,
    };
    let k_spaced_decrease = match dynamics {
        Dynamics::ZeroAttractive => {
            let k = system.period() as i64;
            let ok = (k + 1..=traj.len() as i64).all(|n| {
                matches!((traj.get(n), traj.get(n - k)), (Some(a), Some(b)) if a < b)
            });
            if !ok {
                *failed = true;
                diagnostics.push("simulate: x_n < x_(n-k) violated".into());
            }
            Some(ok)
        }
        _ => None,
    };

    Ok(Some(SimulationSection {
        steps: traj.len(),
        final_value: traj.last(),
        residue_stats: stats,
        tail_lemma,
        k_spaced_decrease,
    }))
}

/// Loads `scenario_path` and runs `command`.
pub fn execute(
    command: Command,
    scenario_path: &Path,
    out_dir: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<Execution, CliError> {
    let scenario = Scenario::load(scenario_path)?;
    execute_scenario(command, &scenario, out_dir, seed_override)
}

/// Reads `PPLAB_SEED` from the environment.
pub fn seed_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Seed(v)),
        Err(_) => Ok(None),
    }
}

/// Binary entry point: runs and maps the outcome to an exit status.
pub fn run(command: Command, scenario_path: &Path, out_dir: Option<&Path>) -> i32 {
    let result = seed_from_env().and_then(|seed| execute(command, scenario_path, out_dir, seed));
    match result {
        Ok(exec) => {
            let r = &exec.report;
            eprintln!(
                "{}: {} (P0 = {}, c = {})",
                scenario_path.display(),
                r.classification.dynamics.as_str(),
                r.classification.product_at_zero,
                r.classification.limit_product
            );
            for d in &r.diagnostics {
                eprintln!("  {d}");
            }
            for p in &exec.written {
                eprintln!("  wrote {}", p.display());
            }
            exec.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
