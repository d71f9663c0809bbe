#![allow(dead_code)]

use pplab::models::PeriodicSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Randomized all-Pielou systems with `k in 1..=5` and `prod beta > min_product`.
pub fn random_periodic_pielou(count: usize, min_product: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(1..=5);
        let betas: Vec<f64> = (0..k)
            .map(|_| rng.gen_range(0.25_f64.ln()..=4.0_f64.ln()).exp())
            .collect();
        if betas.iter().product::<f64>() > min_product {
            out.push(betas);
        }
    }
    out
}

/// Randomized all-Pielou systems with `k in 1..=5` and `prod beta` drawn
/// uniformly from `[lo, hi]`.
pub fn random_extinct_pielou(count: usize, lo: f64, hi: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=5);
            let raw: Vec<f64> = (0..k)
                .map(|_| rng.gen_range(0.25_f64.ln()..=4.0_f64.ln()).exp())
                .collect();
            let target: f64 = rng.gen_range(lo..=hi);
            let scale = (target / raw.iter().product::<f64>()).powf(1.0 / k as f64);
            raw.into_iter().map(|b| b * scale).collect()
        })
        .collect()
}

pub fn pielou(betas: &[f64]) -> PeriodicSystem {
    PeriodicSystem::pielou(betas).unwrap()
}

/// Rational saturating system, beta = (0.8, 2).
pub fn rational_two_cycle() -> PeriodicSystem {
    PeriodicSystem::rational(&[(0.8, 1.0, 0.5), (2.0, 1.0, 0.5)]).unwrap()
}

/// Named periodic-attractive systems used across the acceptance criteria.
pub fn fixed_periodic_systems() -> Vec<(String, PeriodicSystem)> {
    vec![
        ("pielou k=1 [2]".into(), pielou(&[2.0])),
        ("pielou k=2 [0.5, 3]".into(), pielou(&[0.5, 3.0])),
        ("pielou k=3 [0.7, 2.5, 1.3]".into(), pielou(&[0.7, 2.5, 1.3])),
        ("pielou k=4 [1.2, 0.6, 2.2, 0.9]".into(), pielou(&[1.2, 0.6, 2.2, 0.9])),
        (
            "beverton-holt k=3 K=(10,4,7)".into(),
            PeriodicSystem::beverton_holt(2.5, &[10.0, 4.0, 7.0]).unwrap(),
        ),
        (
            "beverton-holt k=2 K=5".into(),
            PeriodicSystem::beverton_holt(3.0, &[5.0, 5.0]).unwrap(),
        ),
        ("rational beta=(0.8, 2)".into(), rational_two_cycle()),
    ]
}

/// Independent brute-force orbit: iterates the Pielou-type recursion
/// directly from closures, then averages the last `periods` periods per
/// residue class. Returns `x*_1..x*_k`.
pub fn brute_force_orbit<F>(k: usize, f: F, steps: usize, periods: usize) -> Vec<f64>
where
    F: Fn(usize, f64) -> f64,
{
    // x_{n+1} = x_n * f(slot(n), x_{n-1}); slot(n) = (n - 1) mod k
    let (mut prev, mut cur) = (1.0_f64, 1.0_f64);
    let mut tail = Vec::with_capacity(periods * k);
    let total = steps / k * k;
    for n in 0..total {
        let slot = (n + k - 1) % k;
        let next = cur * f(slot, prev);
        prev = cur;
        cur = next;
        if n + 1 > total - periods * k {
            tail.push(cur);
        }
    }
    // tail[j] is x_{total - periods*k + 1 + j}, residue (j mod k) + 1
    let mut sums = vec![0.0; k];
    for (j, x) in tail.iter().enumerate() {
        sums[j % k] += x;
    }
    sums.into_iter().map(|s| s / periods as f64).collect()
}
