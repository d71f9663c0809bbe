//! When the product of the growth factors at zero is at most one the
//! population dies out, and every k-spaced subsequence is strictly
//! decreasing on the way down.
//!
//!     cargo run --example extinction

use pplab::dynamics::{residue_limits, simulate_until};
use pplab::models::PeriodicSystem;

fn main() -> pplab::Result<()> {
    for betas in [[0.5, 1.6], [0.5, 2.0]] {
        let sys = PeriodicSystem::pielou(&betas)?;
        let t = simulate_until(&sys, 2.0, 1.0, 100_000, |_, x| x < 1e-12)?;
        let monotone = (3..=t.len() as i64).all(|n| t.get(n) < t.get(n - 2));
        println!(
            "betas {betas:?}: x = {:.3e} after {} steps, x_n < x_(n-2) throughout: {monotone}",
            t.last(),
            t.len()
        );
        for band in residue_limits(&t, t.len() / 2)?.residues {
            println!("  residue {}: tail max {:.3e}", band.h, band.sup);
        }
    }
    Ok(())
}
