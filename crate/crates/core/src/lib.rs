//! Simulation and quantification of quantum discord in separable two-qubit
//! states probed by cross-correlated Mach-Zehnder interferometers.
//!
//! The crate models a bipartite source emitting mixtures of pure product
//! states. Each subsystem passes through its own interferometer (mixing
//! angles `alpha` for A and `beta` for B, loop phases `phi_a`, `phi_b`);
//! subsystem A additionally traverses a detecting interferometer with a
//! tunable phase `phi_d`. The joint detection probability oscillates in
//! `phi_d`, and the visibility of that oscillation vanishes exactly when
//! the A-side optics diagonalize the conditioned A state. Tracking where
//! the visibility vanishes as the B settings are scanned yields a
//! measurable witness and quantifier of A-discord.
//!
//! Module map:
//!
//! - [`matrix`], [`eigen`], [`bloch`], [`entropy`]: the 2x2/4x4 complex
//!   linear-algebra substrate, Bloch-sphere parameterizations, and von
//!   Neumann entropy (base-2, bits).
//! - [`states`]: separable state specifications and A-classicality tests.
//! - [`interferometer`]: scattering matrices, joint detection probability,
//!   conditioned states, and analytic visibility coefficients.
//! - [`zerovis`]: zero-visibility solutions, landscape sampling, zero-line
//!   tracing, and barcode/grid/curved classification.
//! - [`discord`]: exact discord by measurement minimization plus the
//!   `delta2_alpha`/`delta2_phi` landscape quantifiers.
//! - [`protocol`]: shot-level Monte-Carlo emulation of the measurement
//!   protocol with fringe fitting.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only switches float math from `libm` to the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
// Index loops over fixed 2x2/4x4/8x8 matrices read better than iterator
// chains here.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod bloch;
pub mod discord;
pub mod eigen;
pub mod entropy;
pub mod error;
pub mod interferometer;
pub mod matrix;
pub mod protocol;
pub mod states;
pub mod zerovis;

pub use bloch::{BlochAngles, BlochVector};
pub use error::Error;
pub use interferometer::{
    BeamSplitterSetting, ConditionedState, InterferometerConfig, VisibilityCoefficients,
};
pub use matrix::{Mat2, Mat4, Subsystem, C64};
pub use states::{ClassicalityReport, SeparableStateSpec, StateComponent};

/// Resultant vectors shorter than this are treated as zero: the conditioned
/// state is maximally mixed and every `alpha` gives zero visibility.
pub const DEGENERACY_TOL: f64 = 1e-12;
