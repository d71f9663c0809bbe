//! Seasonal Beverton-Holt: the carrying capacity cycles through three
//! values and the population locks onto a 3-cycle.
//!
//!     cargo run --example beverton_holt_orbit

use pplab::dynamics::{check_lemma_relations, extract_orbit, simulate, DEFAULT_ORBIT_TOL};
use pplab::models::PeriodicSystem;

fn main() -> pplab::Result<()> {
    let capacities = [10.0, 4.0, 7.0];
    let sys = PeriodicSystem::beverton_holt(2.5, &capacities)?;

    let orbit = extract_orbit(&sys, 10_000, DEFAULT_ORBIT_TOL)?;
    println!("3-cycle: {:?}", orbit.values);
    println!("closure residual: {:e}", orbit.closure_residual);

    let lemma = check_lemma_relations(&sys, &orbit)?;
    println!("{:?} relation residual: {:e}", lemma.relation, lemma.max);

    // the cycle is not the capacities themselves: the delay smears them
    let t = simulate(&sys, 1.0, 1.0, 60)?;
    for n in (51..=60).map(|n| n as i64) {
        println!(
            "n = {n:>2}  K = {:>4}  x = {:.6}",
            capacities[sys.slot(n)],
            t.get(n).unwrap()
        );
    }
    Ok(())
}
