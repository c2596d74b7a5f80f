//! Scattering-matrix evolution through the interferometers and the joint
//! detection correlation.
//!
//! Subsystem A traverses its interferometer (mixing angle `alpha`, loop
//! phase `phi_a`) followed by the detecting stage (tunable phase `phi_d`,
//! then a fixed splitter, 50:50 by default). Subsystem B traverses only its
//! own interferometer (`beta`, `phi_b`). The joint probability of both
//! particles landing on the first detectors is
//!
//! `K = Tr[ (P (x) P) (M_A (x) S_B) rho (M_A (x) S_B)^dagger ]`
//!
//! with `P = |u><u|` and `M_A = S_d e^{i phi_d sigma_3 / 2} S_A`. Tracing
//! out B reduces K to a single-qubit expression governed by the conditioned
//! state `rho^{A|B} = sum_v w^B_v rho^A_v`, whose Bloch resultant fixes the
//! entire `phi_d` fringe: `K(phi_d) = C + (A e^{i phi_d} + c.c.)`.
//! Both routes are implemented; the 4x4 route is the brute-force oracle for
//! the reduced one.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;

use core::f64::consts::FRAC_PI_2;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::matrix::{cr, C64, Mat2};
use crate::states::SeparableStateSpec;
use crate::DEGENERACY_TOL;

/// One beam splitter. The mixing angle sets the transmission probability
/// `|t|^2 = sin^2(angle/2)`; `phi_r`/`phi_t` are the reflection and
/// transmission phases (zero for the real splitters used throughout the
/// worked examples).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterSetting {
    pub mix_angle: f64,
    pub phi_r: f64,
    pub phi_t: f64,
}

impl BeamSplitterSetting {
    pub fn real(mix_angle: f64) -> Self {
        BeamSplitterSetting {
            mix_angle,
            phi_r: 0.0,
            phi_t: 0.0,
        }
    }

    /// Balanced real splitter.
    pub fn fifty_fifty() -> Self {
        Self::real(FRAC_PI_2)
    }

    pub fn reflection(&self) -> C64 {
        C64::from_polar((0.5 * self.mix_angle).cos(), self.phi_r)
    }

    pub fn transmission(&self) -> C64 {
        C64::from_polar((0.5 * self.mix_angle).sin(), self.phi_t)
    }

    /// phi_r - phi_t, the only phase combination entering zero-visibility
    /// geometry.
    pub fn phi_minus(&self) -> f64 {
        self.phi_r - self.phi_t
    }
}

/// Settings of all three interferometers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    pub a_bs: BeamSplitterSetting,
    pub phi_a: f64,
    pub b_bs: BeamSplitterSetting,
    /// Held fixed during the protocol scans.
    pub phi_b: f64,
    pub detector_bs: BeamSplitterSetting,
}

impl InterferometerConfig {
    /// Real splitters with the given mixing angles and loop phases; the
    /// detecting splitter is 50:50.
    pub fn from_angles(alpha: f64, phi_a: f64, beta: f64, phi_b: f64) -> Self {
        InterferometerConfig {
            a_bs: BeamSplitterSetting::real(alpha),
            phi_a,
            b_bs: BeamSplitterSetting::real(beta),
            phi_b,
            detector_bs: BeamSplitterSetting::fifty_fifty(),
        }
    }
}

impl Default for InterferometerConfig {
    fn default() -> Self {
        Self::from_angles(0.0, 0.0, 0.0, 0.0)
    }
}

/// Scattering matrix of one interferometer stage: the loop phase
/// `diag(e^{i phase/2}, e^{-i phase/2})` accumulated between the splitters,
/// followed by the mixing matrix `[[r, t], [-t*, r*]]`.
pub fn scattering_matrix(bs: &BeamSplitterSetting, loop_phase: f64) -> Mat2 {
    let r = bs.reflection();
    let t = bs.transmission();
    let mix = Mat2::new(r, t, -t.conj(), r.conj());
    let phase = Mat2::diag(
        C64::from_polar(1.0, 0.5 * loop_phase),
        C64::from_polar(1.0, -0.5 * loop_phase),
    );
    mix * phase
}

/// Projector onto the first detector: |u><u|.
pub fn detector_projector() -> Mat2 {
    Mat2::diag(cr(1.0), cr(0.0))
}

/// Full A-side evolution: interferometer A, then the detecting phase and
/// splitter.
pub fn a_side_matrix(config: &InterferometerConfig, phi_d: f64) -> Mat2 {
    let s_a = scattering_matrix(&config.a_bs, config.phi_a);
    let s_d = scattering_matrix(&config.detector_bs, phi_d);
    s_d * s_a
}

/// Joint probability of coincident clicks on detectors (D1, D1), computed
/// by explicit 4x4 conjugation and trace. This is the oracle path; the
/// reduced form lives in [`visibility_coefficients`].
pub fn correlation_full(
    spec: &SeparableStateSpec,
    config: &InterferometerConfig,
    phi_d: f64,
) -> f64 {
    let rho = spec.density();
    let m_a = a_side_matrix(config, phi_d);
    let s_b = scattering_matrix(&config.b_bs, config.phi_b);
    let s = m_a.kron(&s_b);
    let p = detector_projector();
    let pp = p.kron(&p);
    let evolved = s * rho * s.adjoint();
    (pp * evolved).trace().re
}

/// The conditioned A state after B is routed through its interferometer and
/// post-selected on detector D1: weights `w^B_v = w_v <u|S_B rho^B_v S_B^+|u>`
/// and the Bloch resultant `N = sum_v w^B_v n_v` over the A components.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionedState {
    /// Per-component conditioned weights, each in [0, w_v].
    pub weights: Vec<f64>,
    /// W_B = sum of the conditioned weights; the probability that B fires D1.
    pub w_total: f64,
    /// Resultant N (not normalized).
    pub resultant: BlochVector,
    /// |N|.
    pub resultant_norm: f64,
}

impl ConditionedState {
    /// Unit direction of the resultant, or `None` in the degenerate case
    /// N = 0 where every measurement direction diagonalizes the state.
    pub fn direction(&self) -> Option<BlochVector> {
        if self.is_degenerate() {
            None
        } else {
            Some(self.resultant.scale(1.0 / self.resultant_norm))
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.resultant_norm < DEGENERACY_TOL
    }

    /// Polar angles (vartheta, varphi) of the unit direction.
    pub fn polar(&self) -> Option<(f64, f64)> {
        self.direction().map(|n| n.polar())
    }

    /// The 2x2 conditioned density matrix (W_B + N.sigma)/2.
    pub fn density(&self) -> Mat2 {
        self.resultant.density_with_weight(self.w_total)
    }
}

pub fn conditioned_state(
    spec: &SeparableStateSpec,
    b_bs: &BeamSplitterSetting,
    phi_b: f64,
) -> ConditionedState {
    let s_b = scattering_matrix(b_bs, phi_b);
    let mut weights = Vec::with_capacity(spec.len());
    let mut w_total = 0.0;
    let mut resultant = BlochVector::ZERO;
    for comp in spec.components() {
        let rho_b = comp.b_state.density();
        let evolved = s_b * rho_b * s_b.adjoint();
        let w = (comp.weight * evolved.0[0][0].re).max(0.0);
        weights.push(w);
        w_total += w;
        resultant = resultant.add(&comp.a_state.bloch_vector().scale(w));
    }
    let resultant_norm = resultant.norm();
    ConditionedState {
        weights,
        w_total,
        resultant,
        resultant_norm,
    }
}

/// Mean term and oscillation amplitude of the `phi_d` fringe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityCoefficients {
    /// Mean term C >= 0.
    pub mean_term: f64,
    /// Complex amplitude of the e^{i phi_d} component.
    pub amplitude: C64,
}

impl VisibilityCoefficients {
    /// Reconstruct K at a detection phase from the fringe model.
    pub fn correlation(&self, phi_d: f64) -> f64 {
        self.mean_term + 2.0 * (self.amplitude * C64::from_polar(1.0, phi_d)).re
    }

    /// Fringe visibility |A / C|; zero when the fringe vanishes entirely.
    /// The case C ~ 0 with finite A is rejected at construction, so a
    /// vanished mean term here means the whole fringe is gone.
    pub fn visibility(&self) -> f64 {
        if self.mean_term < 1e-15 {
            0.0
        } else {
            self.amplitude.norm() / self.mean_term
        }
    }
}

/// Reduced-form fringe coefficients: conjugate the conditioned state by the
/// A scattering matrix and contract with the detector matrix
/// `A = S_d^+ P S_d`. Cross-checked against [`correlation_full`] at every
/// phase by the test suite.
pub fn visibility_coefficients(
    spec: &SeparableStateSpec,
    config: &InterferometerConfig,
) -> Result<VisibilityCoefficients> {
    let cond = conditioned_state(spec, &config.b_bs, config.phi_b);
    coefficients_from_conditioned(&cond, config)
}

/// Same contraction, starting from an already conditioned state.
pub fn coefficients_from_conditioned(
    cond: &ConditionedState,
    config: &InterferometerConfig,
) -> Result<VisibilityCoefficients> {
    let s_a = scattering_matrix(&config.a_bs, config.phi_a);
    let rho_tilde = s_a * cond.density() * s_a.adjoint();

    let s_d = scattering_matrix(&config.detector_bs, 0.0);
    let a_mat = s_d.adjoint() * detector_projector() * s_d;

    let mean_term = (rho_tilde.0[0][0] * a_mat.0[0][0] + rho_tilde.0[1][1] * a_mat.0[1][1]).re;
    let amplitude = rho_tilde.0[0][1] * a_mat.0[1][0];

    if mean_term < 1e-15 && amplitude.norm() >= 1e-15 {
        return Err(Error::ZeroMeanTerm {
            amplitude: amplitude.norm(),
        });
    }
    Ok(VisibilityCoefficients {
        mean_term: mean_term.max(0.0),
        amplitude,
    })
}

/// Fringe visibility for a state and configuration.
pub fn visibility(spec: &SeparableStateSpec, config: &InterferometerConfig) -> Result<f64> {
    Ok(visibility_coefficients(spec, config)?.visibility())
}
