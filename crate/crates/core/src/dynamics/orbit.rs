//! Extraction of the `k`-periodic attractor and the identities it satisfies.
//!
//! The orbit is located in two phases. A long simulation started at
//! `(x~, x~)` lands close to the attractor; Newton's method on the k-fold
//! state map `G(x_{-1}, x_0) = (x_{k-1}, x_k)` then polishes the fixed point.
//! The Jacobian of `G` is taken by forward differences.

use serde::{Deserialize, Serialize};

use super::simulate::{simulate, step};
use crate::analysis::{classify, solve_xtilde, Dynamics, DEFAULT_ROOT_TOL};
use crate::error::{Error, Result};
use crate::models::PeriodicSystem;

pub const DEFAULT_ORBIT_TOL: f64 = 1e-10;
pub const MAX_NEWTON_ITERATIONS: usize = 50;
const FD_RELATIVE_STEP: f64 = 1e-7;
const FD_ABSOLUTE_STEP: f64 = 1e-9;

/// Warm-start length `max(10^4, 10^3 k)`.
pub fn default_sim_steps(period: usize) -> usize {
    (1000 * period).max(10_000)
}

/// A `k`-periodic solution `x*_1..x*_k`, with `x*_{h+k} = x*_h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicOrbit {
    pub values: Vec<f64>,
    /// `max_h |x*_{h+1} - x*_h f_h(x*_{h-1})|`.
    pub closure_residual: f64,
}

impl PeriodicOrbit {
    /// Wraps `values` (`x*_1..x*_k`) and computes their closure residual.
    pub fn new(system: &PeriodicSystem, values: Vec<f64>) -> Result<Self> {
        if values.len() != system.period() {
            return Err(Error::Domain(format!(
                "orbit has {} values for a period-{} system",
                values.len(),
                system.period()
            )));
        }
        let closure_residual = closure_residual(system, &values)?;
        Ok(Self {
            values,
            closure_residual,
        })
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// `x*_h` for any integer `h`.
    pub fn at(&self, h: i64) -> f64 {
        wrap(&self.values, h)
    }

    /// `max_h |prod_{j=1}^{k} f_{h+j}(x*_{h+j-1}) - 1|`: the multiplier over
    /// one full period from every phase.
    pub fn product_identity_residual(&self, system: &PeriodicSystem) -> Result<f64> {
        let k = self.period() as i64;
        let mut worst = 0.0_f64;
        for h in 1..=k {
            let mut prod = 1.0;
            for j in 1..=k {
                prod *= system.f_at(h + j, self.at(h + j - 1))?;
            }
            worst = worst.max((prod - 1.0).abs());
        }
        Ok(worst)
    }
}

fn wrap(values: &[f64], h: i64) -> f64 {
    values[(h - 1).rem_euclid(values.len() as i64) as usize]
}

fn closure_residual(system: &PeriodicSystem, values: &[f64]) -> Result<f64> {
    let k = values.len() as i64;
    let mut worst = 0.0_f64;
    for h in 1..=k {
        let predicted = wrap(values, h) * system.f_at(h, wrap(values, h - 1))?;
        worst = worst.max((wrap(values, h + 1) - predicted).abs());
    }
    Ok(worst)
}

/// The k-fold state map: `(x_{-1}, x_0) -> (x_{k-1}, x_k)`.
pub fn k_fold_map(system: &PeriodicSystem, state: (f64, f64)) -> Result<(f64, f64)> {
    let (mut prev, mut cur) = state;
    for n in 0..system.period() as i64 {
        let next = step(system, n, cur, prev)?;
        prev = cur;
        cur = next;
    }
    Ok((prev, cur))
}

/// `x_1..x_k` generated from `(x_{-1}, x_0)`.
fn orbit_from_state(system: &PeriodicSystem, state: (f64, f64)) -> Result<Vec<f64>> {
    let (mut prev, mut cur) = state;
    let mut out = Vec::with_capacity(system.period());
    for n in 0..system.period() as i64 {
        let next = step(system, n, cur, prev)?;
        out.push(next);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

fn displacement(system: &PeriodicSystem, z: (f64, f64)) -> Result<(f64, f64)> {
    let g = k_fold_map(system, z)?;
    Ok((g.0 - z.0, g.1 - z.1))
}

fn fd_step(x: f64) -> f64 {
    (FD_RELATIVE_STEP * x.abs()).max(FD_ABSOLUTE_STEP)
}

/// Newton iteration for `G(z) = z`. Returns the best iterate found, by
/// sup-norm of `G(z) - z`, together with the iteration count.
fn newton_fixed_point(
    system: &PeriodicSystem,
    start: (f64, f64),
    target: f64,
) -> (f64, f64, usize) {
    let norm = |d: (f64, f64)| d.0.abs().max(d.1.abs());
    let Ok(mut f) = displacement(system, start) else {
        return (start.0, start.1, 0);
    };
    let mut z = start;
    let mut best = (z, norm(f));
    let mut iterations = 0;

    while iterations < MAX_NEWTON_ITERATIONS && best.1 > target {
        iterations += 1;
        let (h0, h1) = (fd_step(z.0), fd_step(z.1));
        let (Ok(f_u), Ok(f_v)) = (
            displacement(system, (z.0 + h0, z.1)),
            displacement(system, (z.0, z.1 + h1)),
        ) else {
            break;
        };
        let (a, c) = ((f_u.0 - f.0) / h0, (f_u.1 - f.1) / h0);
        let (b, d) = ((f_v.0 - f.0) / h1, (f_v.1 - f.1) / h1);
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let du = (d * f.0 - b * f.1) / det;
        let dv = (a * f.1 - c * f.0) / det;

        // Halve the step until the iterate stays in the admissible region.
        let mut lambda = 1.0;
        let mut next = None;
        for _ in 0..40 {
            let cand = (z.0 - lambda * du, z.1 - lambda * dv);
            if cand.0 >= 0.0 && cand.1 > 0.0 {
                if let Ok(fc) = displacement(system, cand) {
                    next = Some((cand, fc));
                    break;
                }
            }
            lambda *= 0.5;
        }
        let Some((cand, fc)) = next else { break };
        let moved = (cand.0 - z.0).abs().max((cand.1 - z.1).abs());
        z = cand;
        f = fc;
        if norm(f) < best.1 {
            best = (z, norm(f));
        }
        if moved == 0.0 {
            break;
        }
    }
    (best.0 .0, best.0 .1, iterations)
}

/// Locates the globally attractive `k`-periodic orbit, warm-starting the
/// simulation at `(x_{-1}, x_0) = (x~, x~)`.
pub fn extract_orbit(
    system: &PeriodicSystem,
    sim_steps: usize,
    refine_tol: f64,
) -> Result<PeriodicOrbit> {
    require_periodic(system)?;
    let x_tilde = solve_xtilde(system, DEFAULT_ROOT_TOL)?;
    extract_orbit_from(system, (x_tilde, x_tilde), sim_steps, refine_tol)
}

/// [`extract_orbit`] with an explicit warm-start pair `(x_{-1}, x_0)`.
pub fn extract_orbit_from(
    system: &PeriodicSystem,
    initial: (f64, f64),
    sim_steps: usize,
    refine_tol: f64,
) -> Result<PeriodicOrbit> {
    require_periodic(system)?;
    if !(refine_tol > 0.0) {
        return Err(Error::Domain(format!(
            "orbit tolerance must be positive, got {refine_tol}"
        )));
    }
    let k = system.period();
    let steps = sim_steps.max(k + 1);
    let traj = simulate(system, initial.1, initial.0, steps)?;

    // last index that is a multiple of k, so (x_{N-1}, x_N) sits at phase 0
    let end = (traj.len() / k * k) as i64;
    let warm = (
        traj.get(end - 1).expect("index within trajectory"),
        traj.get(end).expect("index within trajectory"),
    );
    let phase_one: Vec<f64> = ((end - k as i64 + 1)..=end)
        .map(|n| traj.get(n).expect("index within trajectory"))
        .collect();
    let phase_one = PeriodicOrbit::new(system, phase_one)?;

    let (u, v, iterations) = newton_fixed_point(system, warm, 1e-3 * refine_tol);
    let refined = orbit_from_state(system, (u, v)).and_then(|vals| PeriodicOrbit::new(system, vals));
    match refined {
        Ok(orbit) if orbit.closure_residual <= refine_tol => Ok(orbit),
        _ if phase_one.closure_residual <= refine_tol => Ok(phase_one),
        refined => Err(Error::NonConvergence {
            method: "newton on k-fold map",
            iterations,
            residual: refined
                .map(|o| o.closure_residual)
                .unwrap_or(f64::INFINITY)
                .min(phase_one.closure_residual),
        }),
    }
}

fn require_periodic(system: &PeriodicSystem) -> Result<()> {
    let class = classify(system);
    if class.dynamics == Dynamics::PeriodicAttractive {
        Ok(())
    } else {
        Err(Error::NoOrbit(format!(
            "system is {} (P0 = {}, c = {})",
            class.dynamics.as_str(),
            class.product_at_zero,
            class.limit_product
        )))
    }
}

/// Which limit relation applies for the period's parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaRelation {
    /// `k = 2`: `f_h(I_{h-1}) f_{h-1}(S_h) = 1`.
    Pair,
    /// Even `k`: the product of `k/2` two-step factors equals one.
    EvenProduct,
    /// Odd `k`: `S_h = S_{h-2} f_{h-2}(I_{h-3}) f_{h-1}(S_{h-2})` and the
    /// mirrored relation for `I_h`.
    OddRecurrence,
}

impl LemmaRelation {
    pub fn for_period(k: usize) -> Self {
        match k {
            2 => LemmaRelation::Pair,
            k if k % 2 == 0 => LemmaRelation::EvenProduct,
            _ => LemmaRelation::OddRecurrence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaResiduals {
    pub relation: LemmaRelation,
    /// Absolute deviation for `h = 1..=k`.
    pub per_residue: Vec<f64>,
    pub max: f64,
}

/// Residuals of the parity-appropriate relation between residue-class
/// upper limits `sup` (`S_h`) and lower limits `inf` (`I_h`), `h = 1..=k`.
pub fn lemma_residuals(
    system: &PeriodicSystem,
    sup: &[f64],
    inf: &[f64],
) -> Result<LemmaResiduals> {
    let k = system.period();
    if sup.len() != k || inf.len() != k {
        return Err(Error::Domain(format!(
            "expected {k} residue limits, got {} and {}",
            sup.len(),
            inf.len()
        )));
    }
    let s = |h: i64| wrap(sup, h);
    let i = |h: i64| wrap(inf, h);
    let f = |n: i64, x: f64| system.f_at(n, x);
    let relation = LemmaRelation::for_period(k);

    let mut per_residue = Vec::with_capacity(k);
    for h in 1..=k as i64 {
        let r = match relation {
            LemmaRelation::Pair | LemmaRelation::EvenProduct => {
                let mut prod = 1.0;
                for j in 1..=(k as i64 / 2) {
                    let m = h - 2 * j;
                    prod *= f(m, i(m - 1))? * f(m + 1, s(m))?;
                }
                (prod - 1.0).abs()
            }
            LemmaRelation::OddRecurrence => {
                let upper = s(h - 2) * f(h - 2, i(h - 3))? * f(h - 1, s(h - 2))?;
                let lower = i(h - 2) * f(h - 2, s(h - 3))? * f(h - 1, i(h - 2))?;
                (s(h) - upper).abs().max((i(h) - lower).abs())
            }
        };
        per_residue.push(r);
    }
    let max = per_residue.iter().copied().fold(0.0, f64::max);
    Ok(LemmaResiduals {
        relation,
        per_residue,
        max,
    })
}

/// [`lemma_residuals`] on an orbit, where `S_h = I_h = x*_h`.
pub fn check_lemma_relations(
    system: &PeriodicSystem,
    orbit: &PeriodicOrbit,
) -> Result<LemmaResiduals> {
    lemma_residuals(system, &orbit.values, &orbit.values)
}
