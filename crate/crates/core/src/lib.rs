//! Numerical library for localised single-mode photodetection of a massless
//! scalar field by uniformly accelerated detectors.
//!
//! The pipeline runs: dimensionless parameters ([`params`]) -> wedge
//! coordinates, modes and the vacuum squeezing spectrum ([`rindler`]) ->
//! Gaussian detector mode and its overlap spectrum ([`mode`]) ->
//! single-detector statistics ([`statistics`]), two-detector correlations
//! and entanglement ([`correlations`]), and the perturbative detector
//! dynamics ([`dynamics`]).
//!
//! Units: c = hbar = k_B = 1 and lengths in units of the cavity proper
//! length L. All exported numbers are dimensionless; see [`params`] for the
//! restoration factors.

pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod mode;
pub mod numerics;
pub mod params;
pub mod rindler;
pub mod statistics;

pub use error::{Error, Result};
pub use params::{regime, validate, PhysicalConfig, RegimeFlags};
