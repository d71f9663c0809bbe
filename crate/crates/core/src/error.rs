use thiserror::Error;

/// Errors raised by model construction, analysis and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coefficient family was given parameters outside its admissible set.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// An argument fell outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The system itself is malformed (empty, mismatched period).
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    /// No positive root of the period product exists for this system.
    #[error("no positive root of the period product: {0}")]
    NoRoot(String),

    /// An iterative procedure hit its iteration cap.
    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// A simulated value exceeded the overflow guard.
    #[error("trajectory overflow at n = {n}: x = {value:e}")]
    Overflow { n: i64, value: f64 },

    /// A simulated value underflowed to zero.
    #[error("trajectory underflow at n = {n}: value reached 0")]
    Underflow { n: i64 },

    /// The burn-in left no samples for some residue class.
    #[error("no samples after burn-in {burn_in} for residue h = {residue}")]
    EmptyTail { residue: usize, burn_in: usize },

    /// The system has no periodic attractor to extract or verify.
    #[error("no periodic orbit: {0}")]
    NoOrbit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
