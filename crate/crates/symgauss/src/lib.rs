//! Gaussian integrals on classical Riemannian symmetric spaces of non-compact type.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: stable scalar functions (log-sinh, dilogarithm, log-gamma, quadrature).
//! * [`rootsys`]: restricted root systems, the classification table, Weyl groups.
//! * [`closedform`]: exact partition functions of the complex (type IV) spaces.
//! * [`highrank`]: rank-to-infinity limits of the free energy.
//! * [`equilibrium`]: log-gas energy minimization.
//! * [`oracle`]: Monte Carlo and quadrature estimates of the radial integrals.
//! * [`validate`]: the acceptance suite shared by the CLI and the test target.

pub mod closedform;
pub mod equilibrium;
pub mod error;
pub mod highrank;
pub mod oracle;
pub mod rootsys;
pub mod special;
pub mod validate;

pub use error::{Error, Result};
