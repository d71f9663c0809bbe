//! Threshold products, dynamics classification, the root `x~` of the period
//! product and the permanence interval it induces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::PeriodicSystem;

/// Default tolerance on `|prod f_n(x~) - 1|`.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Cap shared by bracket doubling and bisection.
pub const MAX_ROOT_ITERATIONS: usize = 200;

/// `prod_{n=1}^{k} f_n(x)`.
pub fn product_at(system: &PeriodicSystem, x: f64) -> Result<f64> {
    system
        .coefficients()
        .iter()
        .try_fold(1.0, |acc, f| Ok(acc * f.eval(x)?))
}

/// `prod_{n=1}^{k} f_n(0)`.
pub fn product_at_zero(system: &PeriodicSystem) -> f64 {
    system
        .coefficients()
        .iter()
        .map(|f| f.value_at_zero())
        .product()
}

/// `c = lim_{x -> inf} prod_{n=1}^{k} f_n(x)` from the per-family closed forms.
pub fn limit_product(system: &PeriodicSystem) -> f64 {
    system
        .coefficients()
        .iter()
        .map(|f| f.limit_at_infinity())
        .product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dynamics {
    /// Every solution tends to zero (`P0 <= 1`).
    ZeroAttractive,
    /// A globally attractive `k`-periodic solution exists (`P0 > 1 > c`).
    PeriodicAttractive,
    /// `P0 > 1` and `c >= 1`: no claim is made.
    OutOfTheory,
}

impl Dynamics {
    pub fn as_str(self) -> &'static str {
        match self {
            Dynamics::ZeroAttractive => "zero_attractive",
            Dynamics::PeriodicAttractive => "periodic_attractive",
            Dynamics::OutOfTheory => "out_of_theory",
        }
    }
}

/// Classification together with the two products that decide it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub dynamics: Dynamics,
    pub product_at_zero: f64,
    pub limit_product: f64,
}

pub fn classify(system: &PeriodicSystem) -> Classification {
    let p0 = product_at_zero(system);
    let c = limit_product(system);
    let dynamics = if p0 <= 1.0 {
        Dynamics::ZeroAttractive
    } else if c < 1.0 {
        Dynamics::PeriodicAttractive
    } else {
        Dynamics::OutOfTheory
    };
    Classification {
        dynamics,
        product_at_zero: p0,
        limit_product: c,
    }
}

/// Grid used by [`check_hypotheses`]: `points` log-spaced abscissae in
/// `[x_max * 1e-6, x_max]` with `0` prepended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_max: f64,
    pub points: usize,
    pub margin: f64,
}

impl GridSpec {
    pub const DEFAULT_POINTS: usize = 256;
    const SPAN_DECADES: f64 = 6.0;

    /// `x_max = 10 * x_bar` for periodic-attractive systems, 100 otherwise.
    pub fn for_system(system: &PeriodicSystem) -> Self {
        let x_max = permanence_bounds(system, DEFAULT_ROOT_TOL)
            .map(|b| 10.0 * b.upper.max(1.0))
            .unwrap_or(100.0);
        Self {
            x_max,
            points: Self::DEFAULT_POINTS,
            margin: 0.0,
        }
    }

    pub fn abscissae(&self) -> Vec<f64> {
        let n = self.points.max(2);
        let lo = self.x_max.ln() - Self::SPAN_DECADES * std::f64::consts::LN_10;
        let hi = self.x_max.ln();
        let mut grid = Vec::with_capacity(n + 1);
        grid.push(0.0);
        grid.extend((0..n).map(|i| {
            if i + 1 == n {
                self.x_max
            } else {
                (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()
            }
        }));
        grid
    }
}

/// Grid evidence for the two monotonicity hypotheses, one entry per
/// coefficient `f_1..f_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub decreasing_ok: Vec<bool>,
    pub xf_increasing_ok: Vec<bool>,
    pub grid: Vec<f64>,
    /// Most negative `difference - margin` seen, or 0 when none is negative.
    pub worst_violation: f64,
}

impl HypothesisReport {
    pub fn all_ok(&self) -> bool {
        self.decreasing_ok.iter().chain(&self.xf_increasing_ok).all(|&ok| ok)
    }
}

/// Checks that each `f_i` is strictly decreasing and each `x f_i(x)` strictly
/// increasing between consecutive grid points. Violations are reported, not
/// raised; an evaluation failure counts as a violation.
pub fn check_hypotheses(system: &PeriodicSystem, grid_spec: &GridSpec) -> HypothesisReport {
    let grid = grid_spec.abscissae();
    let margin = grid_spec.margin;
    let mut worst = 0.0_f64;
    let mut decreasing_ok = Vec::with_capacity(system.period());
    let mut xf_increasing_ok = Vec::with_capacity(system.period());

    for f in system.coefficients() {
        let values: Option<Vec<f64>> = grid.iter().map(|&x| f.eval(x).ok()).collect();
        let Some(values) = values else {
            decreasing_ok.push(false);
            xf_increasing_ok.push(false);
            worst = worst.min(-f64::INFINITY);
            continue;
        };
        let mut dec = true;
        let mut inc = true;
        for j in 0..grid.len() - 1 {
            let drop = values[j] - values[j + 1] - margin;
            let rise = grid[j + 1] * values[j + 1] - grid[j] * values[j] - margin;
            if drop <= 0.0 {
                dec = false;
                worst = worst.min(drop);
            }
            if rise <= 0.0 {
                inc = false;
                worst = worst.min(rise);
            }
        }
        decreasing_ok.push(dec);
        xf_increasing_ok.push(inc);
    }

    HypothesisReport {
        decreasing_ok,
        xf_increasing_ok,
        grid,
        worst_violation: worst,
    }
}

fn require_periodic(system: &PeriodicSystem) -> Result<Classification> {
    let class = classify(system);
    match class.dynamics {
        Dynamics::PeriodicAttractive => Ok(class),
        other => Err(Error::NoRoot(format!(
            "system is {} (P0 = {}, c = {})",
            other.as_str(),
            class.product_at_zero,
            class.limit_product
        ))),
    }
}

/// The unique positive root `x~` of `prod f_n(x) = 1`.
///
/// Brackets with `[0, 1]`, doubling the right end until the product drops
/// below one, then bisects. Requires a periodic-attractive system.
pub fn solve_xtilde(system: &PeriodicSystem, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("root tolerance must be positive, got {tol}")));
    }
    require_periodic(system)?;
    let g = |x: f64| product_at(system, x).map(|p| p - 1.0);

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    loop {
        let v = g(hi)?;
        if v.abs() <= tol {
            return Ok(hi);
        }
        if v < 0.0 {
            break;
        }
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_ROOT_ITERATIONS {
            return Err(Error::NonConvergence {
                method: "bracket expansion",
                iterations: doublings,
                residual: v,
            });
        }
    }

    let mut best = (f64::INFINITY, hi);
    for _ in 0..MAX_ROOT_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let v = g(mid)?;
        if v.abs() < best.0 {
            best = (v.abs(), mid);
        }
        if v.abs() <= tol {
            return Ok(mid);
        }
        if mid <= lo || mid >= hi {
            // bracket has collapsed to adjacent floats
            break;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        method: "bisection",
        iterations: MAX_ROOT_ITERATIONS,
        residual: best.0,
    })
}

/// Eventual bounds on every solution of a periodic-attractive system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PermanenceBounds {
    pub x_tilde: f64,
    /// `x~ * prod f_n(0)`.
    pub x_bar: f64,
    /// `x~ * prod f_n(x_bar)`, bounds `liminf x_n` from below.
    pub lower: f64,
    /// Equal to `x_bar`; bounds `limsup x_n` from above.
    pub upper: f64,
}

impl PermanenceBounds {
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        x >= self.lower - eps && x <= self.upper + eps
    }
}

pub fn permanence_bounds(system: &PeriodicSystem, tol: f64) -> Result<PermanenceBounds> {
    let x_tilde = solve_xtilde(system, tol)?;
    let x_bar = x_tilde * product_at_zero(system);
    let lower = x_tilde * product_at(system, x_bar)?;
    Ok(PermanenceBounds {
        x_tilde,
        x_bar,
        lower,
        upper: x_bar,
    })
}

/// Eventual bounds that do not assume each factor `f_n(0) >= 1` or
/// `f_n(x_bar) <= 1`.
///
/// Near an extreme value `x_N`, the recursion writes `x_N` as an argument
/// on the far side of `x~` times the factors of a run of 2 to `k + 1`
/// consecutive coefficients. Bounding that run by the worst cyclic window
/// gives
///
/// ```text
/// upper = x~ * max_W prod_{n in W} f_n(0)
/// lower = x~ * min_W prod_{n in W} f_n(upper)
/// ```
///
/// These contain [`PermanenceBounds`] and are usually much wider.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PermanenceEnvelope {
    pub x_tilde: f64,
    pub lower: f64,
    pub upper: f64,
}

impl PermanenceEnvelope {
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        x >= self.lower - eps && x <= self.upper + eps
    }
}

/// Products of `f_n(x)` over every cyclic window of `2..=k+1` consecutive
/// coefficients, returned as `(min, max)`.
fn window_products(system: &PeriodicSystem, x: f64) -> Result<(f64, f64)> {
    let values: Vec<f64> = system
        .coefficients()
        .iter()
        .map(|f| f.eval(x))
        .collect::<Result<_>>()?;
    let k = values.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for start in 0..k {
        let mut prod = values[start];
        for len in 2..=k + 1 {
            prod *= values[(start + len - 1) % k];
            lo = lo.min(prod);
            hi = hi.max(prod);
        }
    }
    Ok((lo, hi))
}

pub fn permanence_envelope(system: &PeriodicSystem, tol: f64) -> Result<PermanenceEnvelope> {
    let x_tilde = solve_xtilde(system, tol)?;
    let upper = x_tilde * window_products(system, 0.0)?.1;
    let lower = x_tilde * window_products(system, upper)?.0;
    Ok(PermanenceEnvelope {
        x_tilde,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::models::{CoefficientFamily, CustomFamily};

    fn pielou(b: &[f64]) -> PeriodicSystem {
        PeriodicSystem::pielou(b).unwrap()
    }

    #[test]
    fn products() {
        let sys = pielou(&[0.5, 3.0]);
        assert_eq!(product_at(&sys, 0.0).unwrap(), 1.5);
        assert_eq!(product_at(&pielou(&[2.0]), 1.0).unwrap(), 1.0);
        // (0.5/1.5)(3/1.5) = 2/3
        assert!((product_at(&sys, 0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn classification_cases() {
        let c = classify(&pielou(&[0.5, 3.0]));
        assert_eq!(c.dynamics, Dynamics::PeriodicAttractive);
        assert_eq!(c.product_at_zero, 1.5);
        assert_eq!(c.limit_product, 0.0);

        assert_eq!(classify(&pielou(&[0.5, 2.0])).dynamics, Dynamics::ZeroAttractive);

        // c = 2 / (1 + 1/2) = 4/3
        let r = PeriodicSystem::rational(&[(2.0, 1.0, 2.0)]).unwrap();
        let c = classify(&r);
        assert_eq!(c.dynamics, Dynamics::OutOfTheory);
        assert!((c.limit_product - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hypotheses_hold_for_builtins() {
        let grid = GridSpec {
            x_max: 100.0,
            points: 64,
            margin: 0.0,
        };
        let rep = check_hypotheses(&pielou(&[2.0]), &grid);
        assert!(rep.all_ok());
        assert_eq!(rep.worst_violation, 0.0);
        assert_eq!(rep.grid.len(), 65);
        assert_eq!(rep.grid[0], 0.0);
        assert_eq!(*rep.grid.last().unwrap(), 100.0);

        let bh = PeriodicSystem::beverton_holt(3.0, &[5.0]).unwrap();
        assert!(check_hypotheses(&bh, &grid).all_ok());
    }

    #[derive(Debug)]
    struct Wavy;

    impl CustomFamily for Wavy {
        fn name(&self) -> &str {
            "1+sin"
        }
        fn value(&self, x: f64) -> f64 {
            1.0 + x.sin()
        }
        fn limit_at_infinity(&self) -> f64 {
            1.0
        }
        fn upper_bound(&self) -> f64 {
            2.0
        }
    }

    #[test]
    fn hypotheses_catch_non_monotone_custom() {
        let sys =
            PeriodicSystem::new(vec![CoefficientFamily::custom(Arc::new(Wavy)).unwrap()]).unwrap();
        let rep = check_hypotheses(
            &sys,
            &GridSpec {
                x_max: 100.0,
                points: 64,
                margin: 0.0,
            },
        );
        assert!(!rep.decreasing_ok[0]);
        assert!(rep.worst_violation < 0.0);
        assert!(!rep.all_ok());
    }

    #[test]
    fn margin_tightens_check() {
        let grid = GridSpec {
            x_max: 100.0,
            points: 64,
            margin: 1.0,
        };
        assert!(!check_hypotheses(&pielou(&[2.0]), &grid).all_ok());
    }

    #[test]
    fn xtilde_examples() {
        assert!((solve_xtilde(&pielou(&[2.0]), 1e-12).unwrap() - 1.0).abs() < 1e-12);
        let bh = PeriodicSystem::beverton_holt(3.0, &[5.0]).unwrap();
        assert!((solve_xtilde(&bh, 1e-12).unwrap() - 5.0).abs() < 1e-10);
        let xt = solve_xtilde(&pielou(&[0.5, 3.0]), 1e-12).unwrap();
        assert!((xt - (1.5_f64.sqrt() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn xtilde_requires_periodic_case() {
        assert!(matches!(
            solve_xtilde(&pielou(&[0.5, 2.0]), 1e-12),
            Err(Error::NoRoot(_))
        ));
        let r = PeriodicSystem::rational(&[(2.0, 1.0, 2.0)]).unwrap();
        assert!(matches!(solve_xtilde(&r, 1e-12), Err(Error::NoRoot(_))));
        assert!(matches!(
            permanence_bounds(&pielou(&[0.9]), 1e-12),
            Err(Error::NoRoot(_))
        ));
    }

    #[test]
    fn bounds_examples() {
        let b = permanence_bounds(&pielou(&[2.0]), 1e-12).unwrap();
        assert!((b.x_tilde - 1.0).abs() < 1e-12);
        assert!((b.upper - 2.0).abs() < 1e-11);
        assert!((b.lower - 2.0 / 3.0).abs() < 1e-11);
        assert_eq!(b.upper, b.x_bar);

        let bh = PeriodicSystem::beverton_holt(3.0, &[5.0]).unwrap();
        let b = permanence_bounds(&bh, 1e-12).unwrap();
        assert!((b.x_tilde - 5.0).abs() < 1e-10);
        assert!((b.upper - 15.0).abs() < 1e-9);
        assert!((b.lower - 15.0 / 7.0).abs() < 1e-9);
    }

    #[test]
    fn envelope_widens_classical_bounds() {
        for betas in [&[2.0][..], &[0.5, 3.0], &[0.1, 20.0], &[0.7, 2.5, 1.3]] {
            let sys = pielou(betas);
            let b = permanence_bounds(&sys, 1e-12).unwrap();
            let e = permanence_envelope(&sys, 1e-12).unwrap();
            assert!(e.lower <= b.lower && b.upper <= e.upper, "{betas:?}");
        }
        // k = 2, beta = (0.5, 3): x~ = sqrt(1.5) - 1, widest window 3 * 0.5 * 3
        let e = permanence_envelope(&pielou(&[0.5, 3.0]), 1e-12).unwrap();
        assert!((e.upper - 4.5 * (1.5_f64.sqrt() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn large_root_needs_many_doublings() {
        // x~ = beta - 1 far above the initial bracket
        let x = solve_xtilde(&pielou(&[1e6]), 1e-12).unwrap();
        assert!((product_at(&pielou(&[1e6]), x).unwrap() - 1.0).abs() <= 1e-12);
    }
}
