use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::orbit::PeriodicOrbit;
use super::simulate::States;
use crate::analysis::{
    classify, permanence_bounds, permanence_envelope, Dynamics, PermanenceBounds,
    PermanenceEnvelope, DEFAULT_ROOT_TOL,
};
use crate::error::{Error, Result};
use crate::models::PeriodicSystem;

/// Slack on the permanence-interval containment check.
pub const CONTAINMENT_EPS: f64 = 1e-9;

/// Burn-in `max(1000, 100 k)`.
pub fn default_burn_in(period: usize) -> usize {
    (100 * period).max(1000)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Random initial pairs; one extra pair with `x_{-1} = 0` is always added.
    pub n_initials: usize,
    pub steps: usize,
    pub seed: u64,
    /// Allowed final deviation from the orbit.
    pub tol: f64,
    /// Indices `n <= burn_in` are excluded from the containment check.
    /// `None` selects [`default_burn_in`].
    pub burn_in: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialOutcome {
    pub index: usize,
    pub x0: f64,
    pub xm1: f64,
    /// `max_h |x_n - x*_h|` over the final period.
    pub max_deviation: f64,
    pub tail_min: f64,
    pub tail_max: f64,
    pub converged: bool,
    /// Tail inside `[lower - eps, upper + eps]` of [`PermanenceBounds`].
    pub contained: bool,
    /// Tail inside the [`PermanenceEnvelope`].
    pub within_envelope: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractivityReport {
    pub bounds: PermanenceBounds,
    pub envelope: PermanenceEnvelope,
    pub burn_in: usize,
    pub steps: usize,
    pub tol: f64,
    pub outcomes: Vec<InitialOutcome>,
    pub max_deviation: f64,
    pub converged: bool,
    pub contained: bool,
    pub within_envelope: bool,
}

impl AttractivityReport {
    /// Every initial condition ended within `tol` of the orbit.
    pub fn passed(&self) -> bool {
        self.converged
    }
}

/// Draws the initial pairs `(x_0, x_{-1})`: `x_0` log-uniform on
/// `[lower/10, 10 upper]`, `x_{-1}` uniform on `[0, 10 upper]`, followed by
/// the fixed pair `(x~, 0)`.
pub fn initial_pairs(bounds: &PermanenceBounds, n_initials: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = ((bounds.lower / 10.0).ln(), (10.0 * bounds.upper).ln());
    let mut pairs: Vec<(f64, f64)> = (0..n_initials)
        .map(|_| {
            let x0 = rng.gen_range(lo..=hi).exp();
            let xm1 = rng.gen_range(0.0..=10.0 * bounds.upper);
            (x0, xm1)
        })
        .collect();
    pairs.push((bounds.x_tilde, 0.0));
    pairs
}

/// Simulates many initial conditions and checks that each one approaches
/// `orbit` and stays inside the permanence interval after burn-in.
pub fn verify_attractivity(
    system: &PeriodicSystem,
    orbit: &PeriodicOrbit,
    opts: &VerifyOptions,
) -> Result<AttractivityReport> {
    let class = classify(system);
    if class.dynamics != Dynamics::PeriodicAttractive {
        return Err(Error::NoOrbit(format!(
            "system is {}, there is no periodic attractor to verify",
            class.dynamics.as_str()
        )));
    }
    let k = system.period();
    if orbit.period() != k {
        return Err(Error::Domain(format!(
            "orbit period {} does not match system period {k}",
            orbit.period()
        )));
    }
    let burn_in = opts.burn_in.unwrap_or_else(|| default_burn_in(k));
    if opts.steps <= burn_in || opts.steps < k {
        return Err(Error::Domain(format!(
            "steps ({}) must exceed burn-in ({burn_in}) and the period ({k})",
            opts.steps
        )));
    }
    let bounds = permanence_bounds(system, DEFAULT_ROOT_TOL)?;
    let envelope = permanence_envelope(system, DEFAULT_ROOT_TOL)?;
    let pairs = initial_pairs(&bounds, opts.n_initials, opts.seed);

    let outcomes = pairs
        .par_iter()
        .enumerate()
        .map(|(index, &(x0, xm1))| {
            let mut tail_min = f64::INFINITY;
            let mut tail_max = f64::NEG_INFINITY;
            let mut max_deviation = 0.0_f64;
            let final_period = opts.steps - k;
            for item in States::new(system, x0, xm1)?.take(opts.steps) {
                let (n, x) = item?;
                if n as usize > burn_in {
                    tail_min = tail_min.min(x);
                    tail_max = tail_max.max(x);
                }
                if n as usize > final_period {
                    max_deviation = max_deviation.max((x - orbit.at(n)).abs());
                }
            }
            Ok(InitialOutcome {
                index,
                x0,
                xm1,
                max_deviation,
                tail_min,
                tail_max,
                converged: max_deviation <= opts.tol,
                contained: bounds.contains(tail_min, CONTAINMENT_EPS)
                    && bounds.contains(tail_max, CONTAINMENT_EPS),
                within_envelope: envelope.contains(tail_min, CONTAINMENT_EPS)
                    && envelope.contains(tail_max, CONTAINMENT_EPS),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AttractivityReport {
        bounds,
        envelope,
        burn_in,
        steps: opts.steps,
        tol: opts.tol,
        max_deviation: outcomes.iter().map(|o| o.max_deviation).fold(0.0, f64::max),
        converged: outcomes.iter().all(|o| o.converged),
        contained: outcomes.iter().all(|o| o.contained),
        within_envelope: outcomes.iter().all(|o| o.within_envelope),
        outcomes,
    })
}
