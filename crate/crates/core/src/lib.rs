//! Decision support for pricing two insurance business lines with
//! offsetting liabilities.
//!
//! The library is organized in four layers:
//!
//! * [`pricing`] — closed-form loadings under the mean–standard-deviation
//!   risk measure: the joint loading curve `psi(n)`, the competitiveness
//!   region, the critical threshold and monitoring intervals.
//! * [`market`] — demand-aware equilibrium loadings, the collected-premium
//!   comparison between joint and stand-alone pricing, and the sufficient
//!   decision rules built on it.
//! * [`mortality`] — two-population stochastic mortality fitting and
//!   simulation producing present-value distributions for term annuities
//!   and term assurances, plus calibration of the loading weight against
//!   an empirical value-at-risk.
//! * [`screen`] — ingestion and screening of aggregate-loss time series:
//!   detrending, KPSS stationarity diagnostics, and the pairwise
//!   `b*rho < 1` competitiveness matrix.
//!
//! All computations are pure functions of their inputs and deterministic
//! given a seed; nothing here performs IO except the explicit readers in
//! [`mortality`] and [`screen`].

pub mod market;
pub mod mortality;
pub mod pricing;
pub mod screen;
