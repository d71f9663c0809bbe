//! Scenario files: JSON descriptions of a system plus run settings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::analysis::{GridSpec, DEFAULT_ROOT_TOL};
use crate::dynamics::{default_burn_in, default_sim_steps, DEFAULT_ORBIT_TOL};
use crate::models::{CoefficientFamily, FamilySpec, PeriodicSystem};

pub const DEFAULT_STEPS: usize = 10_000;
pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;
pub const DEFAULT_LEMMA_TOL: f64 = 1e-9;
pub const DEFAULT_N_INITIALS: usize = 32;
pub const DEFAULT_REPORT_PATH: &str = "report.json";
pub const DEFAULT_TRAJECTORY_PATH: &str = "trajectory.csv";

/// Verification steps per unit of period, `2 * 10^4 k`.
pub fn default_verify_steps(period: usize) -> usize {
    20_000 * period
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Initial {
    pub x0: f64,
    pub xm1: f64,
}

impl Default for Initial {
    fn default() -> Self {
        Self { x0: 1.0, xm1: 1.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceInput {
    pub root_tol: Option<f64>,
    pub orbit_tol: Option<f64>,
    pub verify_tol: Option<f64>,
    pub lemma_tol: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyInput {
    pub n_initials: Option<usize>,
    pub seed: Option<u64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridInput {
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub report_path: Option<String>,
    pub trajectory_csv_path: Option<String>,
    /// `n,x,h` columns for external plotting.
    pub plot_csv_path: Option<String>,
}

/// A scenario as written on disk; everything but the system is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub period: usize,
    pub coefficients: Vec<FamilySpec>,
    #[serde(default)]
    pub initial: Initial,
    pub steps: Option<usize>,
    pub burn_in: Option<usize>,
    pub sim_steps: Option<usize>,
    #[serde(default)]
    pub tolerances: ToleranceInput,
    #[serde(default)]
    pub verify: VerifyInput,
    #[serde(default)]
    pub hypothesis_grid: GridInput,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub root_tol: f64,
    pub orbit_tol: f64,
    pub verify_tol: f64,
    pub lemma_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifySettings {
    pub n_initials: usize,
    pub seed: u64,
    pub steps: usize,
}

/// A scenario with every default filled in; embedded in each report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub period: usize,
    pub coefficients: Vec<FamilySpec>,
    pub initial: Initial,
    pub steps: usize,
    pub burn_in: usize,
    pub sim_steps: usize,
    pub tolerances: Tolerances,
    pub verify: VerifySettings,
    pub hypothesis_grid: GridSpec,
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

fn positive_tol(field: &str, value: Option<f64>, default: f64) -> Result<f64, CliError> {
    match value {
        None => Ok(default),
        Some(v) if v > 0.0 && v.is_finite() => Ok(v),
        Some(v) => Err(invalid(field, format!("must be positive, got {v}"))),
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Parse {
                field: path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Builds the system described by `coefficients`.
    pub fn system(&self) -> Result<PeriodicSystem, CliError> {
        if self.coefficients.len() != self.period {
            return Err(invalid(
                "coefficients",
                format!(
                    "period is {} but {} coefficients were given",
                    self.period,
                    self.coefficients.len()
                ),
            ));
        }
        if self.period == 0 {
            return Err(invalid("period", "must be at least 1"));
        }
        let families = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &spec)| {
                CoefficientFamily::try_from(spec)
                    .map_err(|e| invalid(format!("coefficients[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PeriodicSystem::new(families).map_err(|e| invalid("coefficients", e.to_string()))
    }

    /// Validates the scenario and fills in defaults. `seed_override` replaces
    /// `verify.seed`.
    pub fn resolve(&self, seed_override: Option<u64>) -> Result<(PeriodicSystem, Settings), CliError> {
        let system = self.system()?;
        let k = self.period;

        let Initial { x0, xm1 } = self.initial;
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(invalid("initial.x0", format!("must be positive, got {x0}")));
        }
        if !(xm1 >= 0.0 && xm1.is_finite()) {
            return Err(invalid("initial.xm1", format!("must be nonnegative, got {xm1}")));
        }
        let steps = self.steps.unwrap_or(DEFAULT_STEPS);
        if steps == 0 {
            return Err(invalid("steps", "must be at least 1"));
        }
        let sim_steps = self.sim_steps.unwrap_or_else(|| default_sim_steps(k));
        if sim_steps == 0 {
            return Err(invalid("sim_steps", "must be at least 1"));
        }

        let t = &self.tolerances;
        let tolerances = Tolerances {
            root_tol: positive_tol("tolerances.root_tol", t.root_tol, DEFAULT_ROOT_TOL)?,
            orbit_tol: positive_tol("tolerances.orbit_tol", t.orbit_tol, DEFAULT_ORBIT_TOL)?,
            verify_tol: positive_tol("tolerances.verify_tol", t.verify_tol, DEFAULT_VERIFY_TOL)?,
            lemma_tol: positive_tol("tolerances.lemma_tol", t.lemma_tol, DEFAULT_LEMMA_TOL)?,
        };

        let burn_in = self.burn_in.unwrap_or_else(|| default_burn_in(k));
        let verify = VerifySettings {
            n_initials: self.verify.n_initials.unwrap_or(DEFAULT_N_INITIALS),
            seed: seed_override.or(self.verify.seed).unwrap_or(0),
            steps: self.verify.steps.unwrap_or_else(|| default_verify_steps(k)),
        };
        if verify.steps <= burn_in {
            return Err(invalid(
                "verify.steps",
                format!("must exceed burn_in ({burn_in}), got {}", verify.steps),
            ));
        }

        let default_grid = GridSpec::for_system(&system);
        let g = &self.hypothesis_grid;
        let hypothesis_grid = GridSpec {
            x_max: positive_tol("hypothesis_grid.x_max", g.x_max, default_grid.x_max)?,
            points: g.points.unwrap_or(default_grid.points),
            margin: g.margin.unwrap_or(default_grid.margin),
        };
        if hypothesis_grid.points < 2 {
            return Err(invalid("hypothesis_grid.points", "must be at least 2"));
        }
        if !(hypothesis_grid.margin >= 0.0) {
            return Err(invalid("hypothesis_grid.margin", "must be nonnegative"));
        }

        Ok((
            system,
            Settings {
                period: k,
                coefficients: self.coefficients.clone(),
                initial: self.initial,
                steps,
                burn_in,
                sim_steps,
                tolerances,
                verify,
                hypothesis_grid,
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "period": 2,
        "coefficients": [
            {"family": "pielou", "beta": 0.5},
            {"family": "pielou", "beta": 3.0}
        ]
    }"#;

    #[test]
    fn defaults_fill_in() {
        let s = Scenario::parse(MINIMAL).unwrap();
        let (sys, set) = s.resolve(None).unwrap();
        assert_eq!(sys.period(), 2);
        assert_eq!(set.steps, DEFAULT_STEPS);
        assert_eq!(set.burn_in, 1000);
        assert_eq!(set.sim_steps, 10_000);
        assert_eq!(set.verify.steps, 40_000);
        assert_eq!(set.tolerances.root_tol, 1e-12);
        assert_eq!(set.hypothesis_grid.points, 256);
        assert_eq!(set.verify.seed, 0);
        assert_eq!(s.resolve(Some(9)).unwrap().1.verify.seed, 9);
    }

    #[test]
    fn parse_error_names_field_and_line() {
        let text = "{\n \"period\": 1,\n \"coefficients\": [{\"family\": \"pielou\", \"beta\": \"two\"}]\n}";
        match Scenario::parse(text) {
            Err(CliError::Parse { field, line, message, .. }) => {
                // tagged enums are buffered, so the path stops at the entry
                assert_eq!(field, "coefficients[0]");
                assert!(message.contains("\"two\""), "{message}");
                assert_eq!(line, 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Scenario::parse(r#"{"period":1,"coefficients":[],"bogus":1}"#),
            Err(CliError::Parse { .. })
        ));
    }

    #[test]
    fn validation_errors() {
        let mismatch = r#"{"period":3,"coefficients":[{"family":"pielou","beta":2.0}]}"#;
        let err = Scenario::parse(mismatch).unwrap().resolve(None).unwrap_err();
        assert!(matches!(err, CliError::Invalid { ref field, .. } if field == "coefficients"));

        let bad = r#"{"period":1,"coefficients":[{"family":"beverton_holt","lambda":0.5,"capacity":1.0}]}"#;
        let err = Scenario::parse(bad).unwrap().resolve(None).unwrap_err();
        assert!(matches!(err, CliError::Invalid { ref field, .. } if field == "coefficients[0]"));

        let tol = r#"{"period":1,"coefficients":[{"family":"pielou","beta":2.0}],"tolerances":{"orbit_tol":0}}"#;
        let err = Scenario::parse(tol).unwrap().resolve(None).unwrap_err();
        assert!(matches!(err, CliError::Invalid { ref field, .. } if field == "tolerances.orbit_tol"));

        let x0 = r#"{"period":1,"coefficients":[{"family":"pielou","beta":2.0}],"initial":{"x0":0,"xm1":1}}"#;
        assert!(Scenario::parse(x0).unwrap().resolve(None).is_err());
    }
}
