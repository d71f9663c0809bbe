//! Numerical attractivity check: many random initial conditions, all of
//! which must end on the extracted cycle.
//!
//!     cargo run --release --example verify

use pplab::dynamics::{extract_orbit, verify_attractivity, VerifyOptions, DEFAULT_ORBIT_TOL};
use pplab::models::PeriodicSystem;

fn main() -> pplab::Result<()> {
    let sys = PeriodicSystem::pielou(&[0.7, 2.5, 1.3])?;
    let orbit = extract_orbit(&sys, 10_000, DEFAULT_ORBIT_TOL)?;
    let opts = VerifyOptions {
        n_initials: 64,
        steps: 60_000,
        seed: 2024,
        tol: 1e-8,
        burn_in: None,
    };
    let report = verify_attractivity(&sys, &orbit, &opts)?;

    println!("cycle {:?}", orbit.values);
    println!("{} initial pairs, max final deviation {:e}", report.outcomes.len(), report.max_deviation);
    let worst = report
        .outcomes
        .iter()
        .max_by(|a, b| a.max_deviation.total_cmp(&b.max_deviation))
        .unwrap();
    println!("slowest start: (x0, x-1) = ({:.4}, {:.4})", worst.x0, worst.xm1);
    println!(
        "tails within envelope [{:.4}, {:.4}]: {}",
        report.envelope.lower, report.envelope.upper, report.within_envelope
    );
    println!("attracting: {}", report.passed());
    Ok(())
}
