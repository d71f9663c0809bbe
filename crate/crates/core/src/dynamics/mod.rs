//! Trajectories of `x_{n+1} = x_n f_n(x_{n-1})`, residue-class tail
//! statistics, periodic-orbit extraction and attractivity checks.

mod orbit;
mod residue;
mod simulate;
mod verify;

pub use orbit::{
    check_lemma_relations, default_sim_steps, extract_orbit, extract_orbit_from, k_fold_map,
    lemma_residuals, LemmaRelation, LemmaResiduals, PeriodicOrbit, DEFAULT_ORBIT_TOL,
    MAX_NEWTON_ITERATIONS,
};
pub use residue::{residue_limits, ResidueBand, ResidueStats};
pub use simulate::{simulate, simulate_until, step, States, Trajectory, OVERFLOW_GUARD};
pub use verify::{
    default_burn_in, initial_pairs, verify_attractivity, AttractivityReport, InitialOutcome,
    VerifyOptions, CONTAINMENT_EPS,
};
