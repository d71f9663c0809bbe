//! Global dynamics of periodically forced delay difference equations
//!
//! ```text
//! x_{n+1} = x_n f_n(x_{n-1}),   f_{n+k} = f_n,   x_0 > 0, x_{-1} >= 0
//! ```
//!
//! With every `f_n` strictly decreasing and every `x f_n(x)` strictly
//! increasing, the period products `P0 = prod f_n(0)` and
//! `c = lim_{x -> inf} prod f_n(x)` decide the long-run behavior:
//!
//! * `P0 <= 1`: every solution tends to zero.
//! * `P0 > 1 > c`: a `k`-periodic solution attracts every solution, and all
//!   solutions are eventually confined to an explicit interval built from the
//!   root `x~` of `prod f_n(x) = 1`.
//!
//! [`models`] holds the coefficient families, [`analysis`] the products,
//! classification and bounds, [`dynamics`] simulation and orbit extraction,
//! and [`cli`] the scenario-file driver behind the `pplab` binary.
//!
//! ```
//! use pplab::analysis::{classify, Dynamics};
//! use pplab::dynamics::extract_orbit;
//! use pplab::models::PeriodicSystem;
//!
//! let system = PeriodicSystem::pielou(&[0.5, 3.0]).unwrap();
//! assert_eq!(classify(&system).dynamics, Dynamics::PeriodicAttractive);
//! let orbit = extract_orbit(&system, 10_000, 1e-12).unwrap();
//! assert_eq!(orbit.values.len(), 2);
//! ```

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod models;

pub use error::{Error, Result};
