//! Plugging in a user-defined coefficient family. The analysis only trusts
//! what it can check, so the hypothesis checker runs first.
//!
//!     cargo run --example custom_family

use std::sync::Arc;

use pplab::analysis::{check_hypotheses, classify, GridSpec};
use pplab::dynamics::{extract_orbit, DEFAULT_ORBIT_TOL};
use pplab::models::{CoefficientFamily, CustomFamily, PeriodicSystem};

/// Ricker-style `f(x) = r exp(-x)`.
#[derive(Debug)]
struct Ricker(f64);

impl CustomFamily for Ricker {
    fn name(&self) -> &str {
        "ricker"
    }
    fn value(&self, x: f64) -> f64 {
        self.0 * (-x).exp()
    }
    fn limit_at_infinity(&self) -> f64 {
        0.0
    }
    fn upper_bound(&self) -> f64 {
        self.0
    }
}

/// Hump-shaped `f(x) = r / (1 + (x - 1)^2)`: not decreasing near zero.
#[derive(Debug)]
struct Hump(f64);

impl CustomFamily for Hump {
    fn name(&self) -> &str {
        "hump"
    }
    fn value(&self, x: f64) -> f64 {
        self.0 / (1.0 + (x - 1.0).powi(2))
    }
    fn limit_at_infinity(&self) -> f64 {
        0.0
    }
    fn upper_bound(&self) -> f64 {
        self.0
    }
}

fn report(name: &str, sys: &PeriodicSystem) -> pplab::Result<()> {
    let hyp = check_hypotheses(sys, &GridSpec::for_system(sys));
    println!(
        "{name}: decreasing {:?}, x f(x) increasing {:?}, {}",
        hyp.decreasing_ok,
        hyp.xf_increasing_ok,
        classify(sys).dynamics.as_str()
    );
    if !hyp.all_ok() {
        println!("  worst violation: {:e}", hyp.worst_violation);
    }
    if hyp.all_ok() {
        println!("  cycle {:?}", extract_orbit(sys, 10_000, DEFAULT_ORBIT_TOL)?.values);
    }
    Ok(())
}

fn main() -> pplab::Result<()> {
    // exp(-x) x peaks at x = 1, so Ricker breaks the second hypothesis too
    let ricker = PeriodicSystem::new(vec![
        CoefficientFamily::custom(Arc::new(Ricker(1.5)))?,
        CoefficientFamily::pielou(2.0)?,
    ])?;
    report("ricker + pielou", &ricker)?;

    let hump = PeriodicSystem::new(vec![CoefficientFamily::custom(Arc::new(Hump(3.0)))?])?;
    report("hump", &hump)?;

    let tight = GridSpec { x_max: 0.9, ..GridSpec::for_system(&ricker) };
    println!("ricker + pielou on [0, 0.9] only: {}", check_hypotheses(&ricker, &tight).all_ok());
    Ok(())
}
