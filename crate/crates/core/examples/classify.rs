//! Classifies a few periodic systems and prints the quantities that decide
//! their long-run behavior.
//!
//!     cargo run --example classify

use pplab::analysis::{classify, permanence_envelope, DEFAULT_ROOT_TOL};
use pplab::models::PeriodicSystem;

fn main() -> pplab::Result<()> {
    let systems = [
        ("pielou (0.5, 3)", PeriodicSystem::pielou(&[0.5, 3.0])?),
        ("pielou (0.5, 2)", PeriodicSystem::pielou(&[0.5, 2.0])?),
        ("pielou (0.9, 1.1, 0.8)", PeriodicSystem::pielou(&[0.9, 1.1, 0.8])?),
        ("beverton-holt K = (10, 4, 7)", PeriodicSystem::beverton_holt(2.5, &[10.0, 4.0, 7.0])?),
        ("rational (3, 3), a1 = 1, a2 = 0.2", PeriodicSystem::rational(&[(3.0, 1.0, 0.2), (3.0, 1.0, 0.2)])?),
    ];

    println!("{:<36} {:>10} {:>10}  dynamics", "system", "P0", "c");
    for (name, sys) in &systems {
        let c = classify(sys);
        println!(
            "{name:<36} {:>10.4} {:>10.4}  {}",
            c.product_at_zero,
            c.limit_product,
            c.dynamics.as_str()
        );
    }

    let env = permanence_envelope(&systems[0].1, DEFAULT_ROOT_TOL)?;
    println!(
        "\npielou (0.5, 3): x~ = {:.6}, tails settle in [{:.6}, {:.6}]",
        env.x_tilde, env.lower, env.upper
    );
    Ok(())
}
