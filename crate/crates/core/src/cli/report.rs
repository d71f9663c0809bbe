use serde::{Deserialize, Serialize};

use super::scenario::Settings;
use super::Command;
use crate::analysis::{Classification, HypothesisReport, PermanenceBounds, PermanenceEnvelope};
use crate::dynamics::{AttractivityReport, LemmaResiduals, ResidueStats};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisSummary {
    pub passed: bool,
    pub decreasing_ok: Vec<bool>,
    pub xf_increasing_ok: Vec<bool>,
    pub worst_violation: f64,
}

impl From<&HypothesisReport> for HypothesisSummary {
    fn from(r: &HypothesisReport) -> Self {
        Self {
            passed: r.all_ok(),
            decreasing_ok: r.decreasing_ok.clone(),
            xf_increasing_ok: r.xf_increasing_ok.clone(),
            worst_violation: r.worst_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSection {
    pub values: Vec<f64>,
    pub closure_residual: f64,
    pub product_identity_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub passed: bool,
    pub max_deviation: f64,
    pub tol: f64,
    pub steps: usize,
    pub burn_in: usize,
    pub seed: u64,
    /// Per initial condition, in draw order; the last entry is `(x~, 0)`.
    pub deviations: Vec<f64>,
    pub tail_min: f64,
    pub tail_max: f64,
    pub contained_in_bounds: bool,
    pub within_envelope: bool,
}

impl VerificationSummary {
    pub fn new(r: &AttractivityReport, seed: u64) -> Self {
        Self {
            passed: r.passed(),
            max_deviation: r.max_deviation,
            tol: r.tol,
            steps: r.steps,
            burn_in: r.burn_in,
            seed,
            deviations: r.outcomes.iter().map(|o| o.max_deviation).collect(),
            tail_min: r.outcomes.iter().map(|o| o.tail_min).fold(f64::INFINITY, f64::min),
            tail_max: r
                .outcomes
                .iter()
                .map(|o| o.tail_max)
                .fold(f64::NEG_INFINITY, f64::max),
            contained_in_bounds: r.contained,
            within_envelope: r.within_envelope,
        }
    }
}

/// Evidence from the scenario's own trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSection {
    pub steps: usize,
    pub final_value: f64,
    pub residue_stats: ResidueStats,
    /// Relations between the tail estimates of `S_h` and `I_h`; only for
    /// periodic-attractive systems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_lemma: Option<LemmaResiduals>,
    /// `x_n < x_{n-k}` for every `n > k`; only for zero-attractive systems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_spaced_decrease: Option<bool>,
}

/// Machine-readable result of one CLI run. Sections are present only when
/// the command produced them and they apply to the classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub settings: Settings,
    pub classification: Classification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesisSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<PermanenceBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope: Option<PermanenceEnvelope>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaResiduals>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationSection>,
    #[serde(default)]
    pub diagnostics: Vec<String>,
    pub checks_passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
