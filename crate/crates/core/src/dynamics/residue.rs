use serde::{Deserialize, Serialize};

use super::simulate::Trajectory;
use crate::error::{Error, Result};

/// Tail extremes of the subsequence `x_{kn+h}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueBand {
    pub h: usize,
    /// Estimate of `limsup x_{kn+h}`.
    pub sup: f64,
    /// Estimate of `liminf x_{kn+h}`.
    pub inf: f64,
    pub samples: usize,
}

impl ResidueBand {
    pub fn spread(&self) -> f64 {
        self.sup - self.inf
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueStats {
    pub burn_in: usize,
    pub tail_length: usize,
    pub residues: Vec<ResidueBand>,
}

impl ResidueStats {
    pub fn sup(&self) -> Vec<f64> {
        self.residues.iter().map(|r| r.sup).collect()
    }

    pub fn inf(&self) -> Vec<f64> {
        self.residues.iter().map(|r| r.inf).collect()
    }

    pub fn max_spread(&self) -> f64 {
        self.residues.iter().map(ResidueBand::spread).fold(0.0, f64::max)
    }
}

/// Max and min of each residue class over the indices `n > burn_in`.
pub fn residue_limits(traj: &Trajectory, burn_in: usize) -> Result<ResidueStats> {
    let k = traj.period();
    let mut bands: Vec<ResidueBand> = (1..=k)
        .map(|h| ResidueBand {
            h,
            sup: f64::NEG_INFINITY,
            inf: f64::INFINITY,
            samples: 0,
        })
        .collect();

    for (n, x) in traj.iter().skip(burn_in) {
        let band = &mut bands[traj.residue(n) - 1];
        band.sup = band.sup.max(x);
        band.inf = band.inf.min(x);
        band.samples += 1;
    }

    if let Some(empty) = bands.iter().find(|b| b.samples == 0) {
        return Err(Error::EmptyTail {
            residue: empty.h,
            burn_in,
        });
    }

    Ok(ResidueStats {
        burn_in,
        tail_length: traj.len() - burn_in,
        residues: bands,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::simulate;
    use crate::models::PeriodicSystem;

    #[test]
    fn constant_trajectory() {
        let sys = PeriodicSystem::pielou(&[2.0]).unwrap();
        let t = simulate(&sys, 1.0, 1.0, 50).unwrap();
        let s = residue_limits(&t, 10).unwrap();
        assert_eq!(s.residues.len(), 1);
        assert_eq!(s.residues[0].sup, 1.0);
        assert_eq!(s.residues[0].inf, 1.0);
        assert_eq!(s.tail_length, 40);
    }

    #[test]
    fn empty_tail() {
        let sys = PeriodicSystem::pielou(&[0.5, 3.0]).unwrap();
        let t = simulate(&sys, 1.0, 1.0, 11).unwrap();
        assert!(residue_limits(&t, 10).is_err());
        assert!(matches!(
            residue_limits(&t, 11),
            Err(Error::EmptyTail { residue: 1, .. })
        ));
        assert!(residue_limits(&t, 9).is_ok());
    }

    #[test]
    fn periodic_run_collapses() {
        let sys = PeriodicSystem::pielou(&[0.5, 3.0]).unwrap();
        let t = simulate(&sys, 0.3, 4.0, 20_000).unwrap();
        let s = residue_limits(&t, 10_000).unwrap();
        assert!(s.max_spread() <= 1e-8);
        for b in &s.residues {
            assert!(b.inf <= b.sup);
        }
        let early = residue_limits(&t, 100).unwrap();
        assert!(early.max_spread() >= s.max_spread());
    }

    #[test]
    fn zero_run_shrinks() {
        let sys = PeriodicSystem::pielou(&[0.8]).unwrap();
        let t = simulate(&sys, 2.0, 1.0, 400).unwrap();
        let a = residue_limits(&t, 100).unwrap();
        let b = residue_limits(&t, 200).unwrap();
        assert!(a.residues[0].sup <= t.get(100).unwrap());
        assert!(b.residues[0].sup <= t.get(200).unwrap());
        assert!(b.residues[0].sup < a.residues[0].sup);
    }
}
