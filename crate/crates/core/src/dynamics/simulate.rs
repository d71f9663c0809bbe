use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::models::PeriodicSystem;

/// Values above this are treated as a diverging (misconfigured) run.
pub const OVERFLOW_GUARD: f64 = 1e300;

/// One application of the recursion: `x_{n+1} = x_n f_n(x_{n-1})`.
pub fn step(system: &PeriodicSystem, n: i64, x_n: f64, x_prev: f64) -> Result<f64> {
    if !(x_n > 0.0) || !x_n.is_finite() {
        return Err(Error::Domain(format!(
            "state x_{n} must be finite and positive, got {x_n}"
        )));
    }
    let next = x_n * system.f_at(n, x_prev)?;
    if !next.is_finite() || next > OVERFLOW_GUARD {
        return Err(Error::Overflow {
            n: n + 1,
            value: next,
        });
    }
    if next <= 0.0 {
        return Err(Error::Underflow { n: n + 1 });
    }
    Ok(next)
}

/// Lazy forward orbit: yields `(n, x_n)` for `n = 1, 2, ...`.
#[derive(Debug, Clone)]
pub struct States<'a> {
    system: &'a PeriodicSystem,
    n: i64,
    prev: f64,
    cur: f64,
    failed: bool,
}

impl<'a> States<'a> {
    pub fn new(system: &'a PeriodicSystem, x0: f64, xm1: f64) -> Result<Self> {
        check_initial(x0, xm1)?;
        Ok(Self {
            system,
            n: 0,
            prev: xm1,
            cur: x0,
            failed: false,
        })
    }
}

impl Iterator for States<'_> {
    type Item = Result<(i64, f64)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match step(self.system, self.n, self.cur, self.prev) {
            Ok(next) => {
                self.prev = self.cur;
                self.cur = next;
                self.n += 1;
                Some(Ok((self.n, next)))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

fn check_initial(x0: f64, xm1: f64) -> Result<()> {
    if !(x0 > 0.0) || !x0.is_finite() {
        return Err(Error::Domain(format!("x_0 must be finite and positive, got {x0}")));
    }
    if !(xm1 >= 0.0) || !xm1.is_finite() {
        return Err(Error::Domain(format!(
            "x_-1 must be finite and nonnegative, got {xm1}"
        )));
    }
    Ok(())
}

/// A computed solution `x_{-1}, x_0, x_1, ..., x_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    period: usize,
    xm1: f64,
    x0: f64,
    values: Vec<f64>,
}

impl Trajectory {
    pub fn period(&self) -> usize {
        self.period
    }

    pub fn initial(&self) -> (f64, f64) {
        (self.xm1, self.x0)
    }

    /// `x_1..x_N`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of computed steps `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `x_n` for `-1 <= n <= N`.
    pub fn get(&self, n: i64) -> Option<f64> {
        match n {
            -1 => Some(self.xm1),
            0 => Some(self.x0),
            n if n > 0 => self.values.get(n as usize - 1).copied(),
            _ => None,
        }
    }

    pub fn last(&self) -> f64 {
        self.values.last().copied().unwrap_or(self.x0)
    }

    /// `(n, x_n)` for `n = 1..=N`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &x)| (i as i64 + 1, x))
    }

    /// Residue class `h in 1..=k` of index `n`.
    pub fn residue(&self, n: i64) -> usize {
        (n - 1).rem_euclid(self.period as i64) as usize + 1
    }

    /// CSV with header `n,x`, one row per index from `n = -1` to `N`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n,x")?;
        writeln!(out, "-1,{:?}", self.xm1)?;
        writeln!(out, "0,{:?}", self.x0)?;
        for (n, x) in self.iter() {
            writeln!(out, "{n},{x:?}")?;
        }
        Ok(())
    }

    /// Plot columns `n,x,h` with the residue class of each index.
    pub fn write_plot_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n,x,h")?;
        writeln!(out, "-1,{:?},{}", self.xm1, self.residue(-1))?;
        writeln!(out, "0,{:?},{}", self.x0, self.residue(0))?;
        for (n, x) in self.iter() {
            writeln!(out, "{n},{x:?},{}", self.residue(n))?;
        }
        Ok(())
    }
}

/// Runs `steps` iterations from `(x_0, x_{-1})`.
pub fn simulate(system: &PeriodicSystem, x0: f64, xm1: f64, steps: usize) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::Domain("steps must be at least 1".into()));
    }
    simulate_until(system, x0, xm1, steps, |_, _| false)
}

/// Like [`simulate`], but stops right after the first `(n, x_n)` for which
/// `stop` returns true.
pub fn simulate_until<F>(
    system: &PeriodicSystem,
    x0: f64,
    xm1: f64,
    max_steps: usize,
    mut stop: F,
) -> Result<Trajectory>
where
    F: FnMut(i64, f64) -> bool,
{
    let mut values = Vec::with_capacity(max_steps);
    for item in States::new(system, x0, xm1)?.take(max_steps) {
        let (n, x) = item?;
        values.push(x);
        if stop(n, x) {
            break;
        }
    }
    Ok(Trajectory {
        period: system.period(),
        xm1,
        x0,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pielou(b: &[f64]) -> PeriodicSystem {
        PeriodicSystem::pielou(b).unwrap()
    }

    #[test]
    fn step_examples() {
        assert_eq!(step(&pielou(&[2.0]), 0, 1.0, 1.0).unwrap(), 1.0);
        assert_eq!(step(&pielou(&[2.0]), 0, 0.5, 0.0).unwrap(), 1.0);
        // 1 * 0.5 / (1 + 1)
        assert_eq!(step(&pielou(&[0.5, 3.0]), 1, 1.0, 1.0).unwrap(), 0.25);
    }

    #[test]
    fn step_rejects_nonpositive_state() {
        assert!(matches!(
            step(&pielou(&[2.0]), 0, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(step(&pielou(&[2.0]), 0, 1.0, -1.0).is_err());
    }

    #[test]
    fn equilibrium_is_constant() {
        let t = simulate(&pielou(&[2.0]), 1.0, 1.0, 100).unwrap();
        assert_eq!(t.len(), 100);
        assert!(t.values().iter().all(|&x| x == 1.0));
    }

    #[test]
    fn zero_case_decays_monotonically() {
        let t = simulate(&pielou(&[0.5]), 1.0, 0.0, 200).unwrap();
        assert!(t.last() < 1e-30);
        for n in 2..=200 {
            assert!(t.get(n).unwrap() < t.get(n - 1).unwrap());
        }
    }

    #[test]
    fn two_cycle_subsequences_settle() {
        let t = simulate(&pielou(&[0.5, 3.0]), 1.0, 1.0, 10_000).unwrap();
        let n = 10_000;
        for r in 0..2 {
            let a = t.get(n - r).unwrap();
            let b = t.get(n - r - 2).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
        // the two phases differ
        assert!((t.get(n).unwrap() - t.get(n - 1).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(simulate(&pielou(&[2.0]), 0.0, 1.0, 10).is_err());
        assert!(simulate(&pielou(&[2.0]), 1.0, -1.0, 10).is_err());
        assert!(simulate(&pielou(&[2.0]), 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn overflow_guard() {
        let err = simulate(&pielou(&[1e200]), 1e200, 0.0, 10).unwrap_err();
        assert!(matches!(err, Error::Overflow { n: 1, .. }));
    }

    #[test]
    fn underflow_reported() {
        let err = simulate(&pielou(&[0.1]), 1.0, 0.0, 100_000).unwrap_err();
        assert!(matches!(err, Error::Underflow { .. }));
    }

    #[test]
    fn stop_predicate() {
        let t = simulate_until(&pielou(&[0.5]), 1.0, 0.0, 10_000, |_, x| x < 1e-12).unwrap();
        assert!(t.last() < 1e-12);
        assert!(t.get(t.len() as i64 - 1).unwrap() >= 1e-12);
    }

    #[test]
    fn csv_layout() {
        let t = simulate(&pielou(&[0.5, 3.0]), 1.0, 1.0, 2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,x\n-1,1.0\n0,1.0\n1,1.5\n2,0.375\n"
        );
        let mut buf = Vec::new();
        t.write_plot_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,x,h\n-1,1.0,1\n0,1.0,2\n1,1.5,1\n2,0.375,2\n"
        );
    }
}
