//! Rational saturating coefficients keep a positive floor at infinity, so
//! the limit product `c` matters: the cycle persists only while `c < 1`.
//!
//!     cargo run --example rational_saturating

use pplab::analysis::{classify, permanence_envelope, Dynamics, DEFAULT_ROOT_TOL};
use pplab::dynamics::{extract_orbit, DEFAULT_ORBIT_TOL};
use pplab::models::PeriodicSystem;

fn main() -> pplab::Result<()> {
    for alpha2 in [0.05, 0.5, 2.0, 5.0] {
        let sys = PeriodicSystem::rational(&[(0.8, 1.0, alpha2), (2.0, 1.0, alpha2)])?;
        let c = classify(&sys);
        print!("alpha2 = {alpha2:<4}  c = {:.4}  {:<20}", c.limit_product, c.dynamics.as_str());
        if c.dynamics == Dynamics::PeriodicAttractive {
            let orbit = extract_orbit(&sys, 10_000, DEFAULT_ORBIT_TOL)?;
            let env = permanence_envelope(&sys, DEFAULT_ROOT_TOL)?;
            print!(
                "  cycle ({:.5}, {:.5}) in [{:.4}, {:.4}]",
                orbit.values[0], orbit.values[1], env.lower, env.upper
            );
        }
        println!();
    }
    Ok(())
}
