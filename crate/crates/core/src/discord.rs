//! Exact quantum discord and the landscape-based quantifiers.
//!
//! Discord with respect to measurements on A is
//! `D_A = min_basis S(B|{Pi}) - [S(rho_AB) - S(rho_A)]`, the gap between
//! the best projective measurement's conditional entropy and its classical
//! bound. The minimization runs a coarse grid over the measurement axis
//! followed by a compass pattern search.
//!
//! The quantifiers `delta2_alpha` and `delta2_phi` are the variances, over
//! a period of the B mixing angle, of `f_alpha = n_z^2` and
//! `f_phi = N_x^2 / (N_x^2 + N_y^2)` of the conditioned resultant: flat
//! curves mean the zero-visibility optics never move when B is scanned,
//! which happens exactly for A-classical states.

use alloc::vec::Vec;

use core::f64::consts::{PI, TAU};

use crate::bloch::BlochAngles;
use crate::entropy::{von_neumann2, von_neumann4};
use crate::error::Result;
use crate::interferometer::{conditioned_state, BeamSplitterSetting};
use crate::matrix::{Mat2, Mat4, Subsystem};
use crate::states::SeparableStateSpec;

/// Measurement axis on the A Bloch sphere; the projectors are
/// `Pi_+- = (1 +- axis.sigma)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub axis: BlochAngles,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        MeasurementBasis {
            axis: BlochAngles::new(theta, phi),
        }
    }

    /// The pair of orthogonal rank-1 projectors.
    pub fn projectors(&self) -> [Mat2; 2] {
        let n = self.axis.bloch_vector();
        let plus = n.density_with_weight(1.0);
        let minus = Mat2::IDENTITY - plus;
        [plus, minus]
    }
}

/// Quantum mutual information S(A) + S(B) - S(AB), in bits.
pub fn mutual_information(rho_ab: &Mat4) -> Result<f64> {
    let s_a = von_neumann2(&rho_ab.partial_trace(Subsystem::B))?;
    let s_b = von_neumann2(&rho_ab.partial_trace(Subsystem::A))?;
    let s_ab = von_neumann4(rho_ab)?;
    Ok((s_a + s_b - s_ab).max(0.0))
}

/// Average entropy of B conditioned on a projective measurement of A:
/// `sum_mu p_mu S(rho_B | outcome mu)`.
pub fn conditional_entropy(rho_ab: &Mat4, basis: &MeasurementBasis) -> Result<f64> {
    let mut total = 0.0;
    for proj in basis.projectors() {
        let big = proj.kron(&Mat2::IDENTITY);
        let selected = big * *rho_ab * big;
        let p = selected.trace().re;
        if p < 1e-14 {
            continue;
        }
        let rho_b = selected.partial_trace(Subsystem::A).scale(1.0 / p);
        total += p * von_neumann2(&rho_b)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscordResult {
    /// A-discord in bits, clamped at zero.
    pub d_a: f64,
    pub optimal_basis: MeasurementBasis,
    /// Quantum mutual information.
    pub mutual_info: f64,
    /// Classical correlations at the optimal basis: S(B) - min cond. entropy.
    pub j_a: f64,
    pub conditional_entropy_min: f64,
}

/// Exact discord by minimizing the conditional entropy over measurement
/// directions: a `grid_n x grid_n` coarse scan of the upper hemisphere
/// parameter box [0, pi] x [0, 2pi), then compass pattern search with step
/// halving until the step drops below `refine_tol`.
pub fn discord(rho_ab: &Mat4, grid_n: usize, refine_tol: f64) -> Result<DiscordResult> {
    let grid_n = grid_n.max(8);
    let refine_tol = refine_tol.max(1e-12);
    let s_a = von_neumann2(&rho_ab.partial_trace(Subsystem::B))?;
    let s_b = von_neumann2(&rho_ab.partial_trace(Subsystem::A))?;
    let s_ab = von_neumann4(rho_ab)?;

    let objective = |theta: f64, phi: f64| -> f64 {
        conditional_entropy(rho_ab, &MeasurementBasis::new(theta, phi))
            .expect("conditioned states of a valid density matrix are valid")
    };

    // Coarse grid. Theta spans [0, pi] inclusive; phi is periodic.
    let mut best = (0.0f64, 0.0f64, f64::INFINITY);
    for i in 0..grid_n {
        let theta = PI * i as f64 / (grid_n - 1) as f64;
        for j in 0..grid_n {
            let phi = TAU * j as f64 / grid_n as f64;
            let v = objective(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }

    // Compass search with shrinking step.
    let mut step = PI / (grid_n - 1) as f64;
    let (mut theta, mut phi, mut val) = best;
    let mut evals = 0usize;
    while step >= refine_tol && evals < 100_000 {
        let candidates = [
            (theta + step, phi),
            (theta - step, phi),
            (theta, phi + step),
            (theta, phi - step),
        ];
        let mut improved = false;
        for &(t, p) in &candidates {
            let t = t.clamp(0.0, PI);
            let v = objective(t, p);
            evals += 1;
            if v < val {
                theta = t;
                phi = p;
                val = v;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let mutual_info = (s_a + s_b - s_ab).max(0.0);
    let d_a = (val - (s_ab - s_a)).max(0.0);
    Ok(DiscordResult {
        d_a,
        optimal_basis: MeasurementBasis::new(theta, crate::bloch::wrap_tau(phi)),
        mutual_info,
        j_a: s_b - val,
        conditional_entropy_min: val,
    })
}

/// One sampled landscape curve over the B mixing angle.
#[derive(Debug, Clone, PartialEq)]
pub struct FCurve {
    pub beta: Vec<f64>,
    /// Curve values; meaningless where `defined` is false.
    pub values: Vec<f64>,
    /// False at masked samples (degenerate resultant, or azimuth undefined
    /// for the phi curve).
    pub defined: Vec<bool>,
    pub mean: f64,
    pub variance: f64,
    /// True when every sample was masked; the variance is then zero by
    /// convention.
    pub all_masked: bool,
}

fn masked_stats(values: &[f64], defined: &[bool]) -> (f64, f64, bool) {
    let mut count = 0usize;
    let mut sum = 0.0;
    for (v, &d) in values.iter().zip(defined) {
        if d {
            sum += v;
            count += 1;
        }
    }
    if count == 0 {
        return (0.0, 0.0, true);
    }
    let mean = sum / count as f64;
    let mut var = 0.0;
    for (v, &d) in values.iter().zip(defined) {
        if d {
            var += (v - mean) * (v - mean);
        }
    }
    (mean, var / count as f64, false)
}

fn sample_curves(spec: &SeparableStateSpec, n: usize, phi_b: f64) -> (FCurve, FCurve) {
    let beta: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    let mut fa = Vec::with_capacity(n);
    let mut fa_def = Vec::with_capacity(n);
    let mut fp = Vec::with_capacity(n);
    let mut fp_def = Vec::with_capacity(n);

    for &b in &beta {
        let cond = conditioned_state(spec, &BeamSplitterSetting::real(b), phi_b);
        match cond.direction() {
            Some(dir) => {
                fa.push(dir.z * dir.z);
                fa_def.push(true);
                let plane = dir.x * dir.x + dir.y * dir.y;
                if plane >= 1e-24 {
                    fp.push(dir.x * dir.x / plane);
                    fp_def.push(true);
                } else {
                    fp.push(f64::NAN);
                    fp_def.push(false);
                }
            }
            None => {
                fa.push(f64::NAN);
                fa_def.push(false);
                fp.push(f64::NAN);
                fp_def.push(false);
            }
        }
    }

    let (a_mean, a_var, a_masked) = masked_stats(&fa, &fa_def);
    let (p_mean, p_var, p_masked) = masked_stats(&fp, &fp_def);
    (
        FCurve {
            beta: beta.clone(),
            values: fa,
            defined: fa_def,
            mean: a_mean,
            variance: a_var,
            all_masked: a_masked,
        },
        FCurve {
            beta,
            values: fp,
            defined: fp_def,
            mean: p_mean,
            variance: p_var,
            all_masked: p_masked,
        },
    )
}

/// Variance of f_alpha = n_z^2 over a period of beta.
pub fn delta_alpha(spec: &SeparableStateSpec, beta_grid_n: usize) -> f64 {
    sample_curves(spec, beta_grid_n, 0.0).0.variance
}

/// Variance of f_phi = N_x^2/(N_x^2 + N_y^2) over a period of beta, with
/// undefined samples masked out of both mean and variance.
pub fn delta_phi(spec: &SeparableStateSpec, beta_grid_n: usize) -> f64 {
    sample_curves(spec, beta_grid_n, 0.0).1.variance
}

/// Default threshold above which the summed variances witness discord.
pub const WITNESS_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantifierResult {
    pub delta2_alpha: f64,
    pub delta2_phi: f64,
    pub f_alpha: FCurve,
    pub f_phi: FCurve,
    pub f_alpha_mean: f64,
    /// delta2_alpha + delta2_phi > threshold.
    pub witness: bool,
    /// Set when the phi curve had no defined samples (z-axis-only states).
    pub f_phi_all_masked: bool,
}

/// Evaluate both quantifiers and the combined witness on a uniform beta
/// grid of `beta_grid_n` samples.
pub fn quantify(
    spec: &SeparableStateSpec,
    beta_grid_n: usize,
    witness_threshold: f64,
) -> QuantifierResult {
    let (f_alpha, f_phi) = sample_curves(spec, beta_grid_n, 0.0);
    let delta2_alpha = f_alpha.variance;
    let delta2_phi = f_phi.variance;
    QuantifierResult {
        delta2_alpha,
        delta2_phi,
        f_alpha_mean: f_alpha.mean,
        witness: delta2_alpha + delta2_phi > witness_threshold,
        f_phi_all_masked: f_phi.all_masked,
        f_alpha,
        f_phi,
    }
}

/// Combined witness: true when the summed variances exceed the threshold.
pub fn combined_witness(spec: &SeparableStateSpec, beta_grid_n: usize) -> (bool, QuantifierResult) {
    let q = quantify(spec, beta_grid_n, WITNESS_THRESHOLD);
    (q.witness, q)
}
