//! Zero-visibility geometry: analytic solutions, landscape sampling,
//! zero-line tracing over the B mixing angle, and landscape classification.
//!
//! The fringe amplitude contracts the conditioned resultant N against the
//! complex frame vector a1 + i a2 of the A-side optics, so the visibility
//! vanishes exactly when N is parallel to a3 = a2 x a1. For a unit
//! direction n with polar angles (vartheta, varphi) the two solution
//! branches are
//!
//! - plus:  alpha0 = vartheta,      phi_a0 = varphi - phi_minus
//! - minus: alpha0 = pi - vartheta, phi_a0 = varphi - phi_minus + pi
//!
//! and when N = 0 the visibility vanishes identically in alpha (a vertical
//! line in the landscape; possible only for A-classical states).

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;

use core::f64::consts::{PI, TAU};

use crate::bloch::{wrap_tau, BlochVector};
use crate::error::{Error, Result};
use crate::interferometer::{
    coefficients_from_conditioned, conditioned_state, BeamSplitterSetting, ConditionedState,
    InterferometerConfig,
};
use crate::states::{SeparableStateSpec, ORTHOGONALITY_TOL};

/// Residual visibility above which a claimed zero counts as a verification
/// failure.
pub const VERIFICATION_TOL: f64 = 1e-8;

/// Orthonormal frame attached to the A-side optics: a1 + i a2 is the
/// direction the fringe amplitude projects N onto, and a3 = a2 x a1
/// completes the triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVectors {
    pub a1: BlochVector,
    pub a2: BlochVector,
    pub a3: BlochVector,
}

pub fn frame_vectors(alpha: f64, phi_minus: f64) -> FrameVectors {
    let (sa, ca) = (alpha.sin(), alpha.cos());
    let (sp, cp) = (phi_minus.sin(), phi_minus.cos());
    let a1 = BlochVector::new(ca * cp, ca * sp, -sa);
    let a2 = BlochVector::new(sp, -cp, 0.0);
    let a3 = a2.cross(&a1);
    FrameVectors { a1, a2, a3 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// One analytic zero-visibility solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroVisSolution {
    Generic {
        /// A mixing angle in [0, pi].
        alpha0: f64,
        /// A loop phase in [0, 2pi).
        phi_a0: f64,
        /// phi_a0 + phi_minus, the splitter-phase-free combination equal to
        /// the azimuth of the conditioned direction.
        cap_phi0: f64,
        branch: Branch,
    },
    /// N = 0: the fringe vanishes for every alpha at this B setting.
    DegenerateAllAlpha,
}

impl ZeroVisSolution {
    /// The companion solution on the other branch.
    pub fn other_branch(&self) -> ZeroVisSolution {
        match *self {
            ZeroVisSolution::Generic {
                alpha0,
                phi_a0,
                cap_phi0,
                branch,
            } => ZeroVisSolution::Generic {
                alpha0: PI - alpha0,
                phi_a0: wrap_tau(phi_a0 + PI),
                cap_phi0: wrap_tau(cap_phi0 + PI),
                branch: match branch {
                    Branch::Plus => Branch::Minus,
                    Branch::Minus => Branch::Plus,
                },
            },
            ZeroVisSolution::DegenerateAllAlpha => ZeroVisSolution::DegenerateAllAlpha,
        }
    }
}

/// Solve the zero-visibility condition for a conditioned state, returning
/// the plus branch (n = +a3). `bs_phases` are (phi_r, phi_t) of the A
/// splitter; for real splitters the phase shift vanishes.
pub fn zero_visibility_solve(cond: &ConditionedState, bs_phases: (f64, f64)) -> ZeroVisSolution {
    let n = match cond.direction() {
        Some(n) => n,
        None => return ZeroVisSolution::DegenerateAllAlpha,
    };
    let (vartheta, varphi) = n.polar();
    let phi_minus = bs_phases.0 - bs_phases.1;
    ZeroVisSolution::Generic {
        alpha0: vartheta,
        phi_a0: wrap_tau(varphi - phi_minus),
        cap_phi0: varphi,
        branch: Branch::Plus,
    }
}

/// Scan parameters of the visibility landscape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Alpha,
    Beta,
    PhiA,
    PhiB,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::Beta => "beta",
            Axis::PhiA => "phi_a",
            Axis::PhiB => "phi_b",
        }
    }
}

/// Values of the scan parameters that are not being swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub alpha: f64,
    pub beta: f64,
    pub phi_a: f64,
    pub phi_b: f64,
}

impl Default for FixedParams {
    fn default() -> Self {
        FixedParams {
            alpha: 0.0,
            beta: 0.0,
            phi_a: 0.0,
            phi_b: 0.0,
        }
    }
}

impl FixedParams {
    fn with(&self, axis: Axis, value: f64) -> FixedParams {
        let mut p = *self;
        match axis {
            Axis::Alpha => p.alpha = value,
            Axis::Beta => p.beta = value,
            Axis::PhiA => p.phi_a = value,
            Axis::PhiB => p.phi_b = value,
        }
        p
    }

    pub fn config(&self) -> InterferometerConfig {
        InterferometerConfig::from_angles(self.alpha, self.phi_a, self.beta, self.phi_b)
    }
}

/// Row-major visibility grid; `values[iy * x.len() + ix]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub values: Vec<f64>,
}

impl Landscape {
    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.x.len() + ix]
    }
}

/// Uniform grid over [0, 2pi), no endpoint duplication.
pub fn periodic_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| TAU * i as f64 / n as f64).collect()
}

/// Sample the visibility over a 2D parameter grid. Deterministic; grid
/// points are evaluated independently.
pub fn sample_landscape(
    spec: &SeparableStateSpec,
    x_axis: Axis,
    y_axis: Axis,
    fixed: &FixedParams,
    resolution: (usize, usize),
) -> Result<Landscape> {
    if x_axis == y_axis || resolution.0 < 2 || resolution.1 < 2 {
        return Err(Error::InvalidAxes);
    }
    let xs = periodic_grid(resolution.0);
    let ys = periodic_grid(resolution.1);
    let mut values = Vec::with_capacity(xs.len() * ys.len());
    for &y in &ys {
        // Reuse the conditioned state across the row when B settings are
        // fixed along x.
        let row_params = fixed.with(y_axis, y);
        let row_cond = if x_axis != Axis::Beta && x_axis != Axis::PhiB {
            let cfg = row_params.config();
            Some(conditioned_state(spec, &cfg.b_bs, cfg.phi_b))
        } else {
            None
        };
        for &x in &xs {
            let params = row_params.with(x_axis, x);
            let config = params.config();
            let coeff = match &row_cond {
                Some(cond) => coefficients_from_conditioned(cond, &config)?,
                None => {
                    let cond = conditioned_state(spec, &config.b_bs, config.phi_b);
                    coefficients_from_conditioned(&cond, &config)?
                }
            };
            values.push(coeff.visibility());
        }
    }
    Ok(Landscape {
        x_axis,
        y_axis,
        x: xs,
        y: ys,
        values,
    })
}

/// Zero-visibility line traced over a uniform beta grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroLine {
    pub beta: Vec<f64>,
    /// Plus-branch mixing angle, in [0, pi]; NaN at degenerate samples.
    pub alpha0_plus: Vec<f64>,
    /// Minus-branch mixing angle pi - alpha0_plus.
    pub alpha0_minus: Vec<f64>,
    /// The same line folded mod pi into the centered window (-pi/2, pi/2],
    /// i.e. the plain-arctan representation tan(alpha0) = |N_perp| / N_z.
    /// Fold crossings appear as near-pi jumps, matching how the periodic
    /// landscape is usually plotted.
    pub alpha0_line: Vec<f64>,
    /// Plus-branch loop phase, in [0, 2pi); NaN at degenerate samples.
    pub phi_a0: Vec<f64>,
    /// Residual visibility of the claimed zero at each sample.
    pub residual: Vec<f64>,
    pub degenerate: Vec<bool>,
    /// Indices i where |alpha0_line[i+1] - alpha0_line[i]| > pi/2 between
    /// non-degenerate samples (fold jumps).
    pub jumps: Vec<usize>,
    /// Beta values where the visibility vanishes for every alpha, refined
    /// by bisection.
    pub vertical_lines: Vec<f64>,
    pub max_residual: f64,
}

/// Fold an angle into the centered window (-pi/2, pi/2] modulo pi.
fn fold_centered(x: f64) -> f64 {
    let mut r = x % PI;
    if r > 0.5 * PI {
        r -= PI;
    } else if r <= -0.5 * PI {
        r += PI;
    }
    r
}

/// Trace the zero-visibility line over `n` uniform beta samples in
/// [0, 2pi), verifying every analytic solution by direct evaluation.
/// Fails if more than 0.1% of the non-degenerate samples have residual
/// visibility above 1e-8.
pub fn trace_zero_lines(spec: &SeparableStateSpec, n: usize, phi_b: f64) -> Result<ZeroLine> {
    let beta = periodic_grid(n);
    let mut alpha0_plus = Vec::with_capacity(n);
    let mut alpha0_minus = Vec::with_capacity(n);
    let mut alpha0_line = Vec::with_capacity(n);
    let mut phi_a0 = Vec::with_capacity(n);
    let mut residual = Vec::with_capacity(n);
    let mut degenerate = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    let mut failures = 0usize;
    let mut checked = 0usize;

    for &b in &beta {
        let b_bs = BeamSplitterSetting::real(b);
        let cond = conditioned_state(spec, &b_bs, phi_b);
        match zero_visibility_solve(&cond, (0.0, 0.0)) {
            ZeroVisSolution::Generic {
                alpha0,
                phi_a0: phi0,
                ..
            } => {
                let config = InterferometerConfig::from_angles(alpha0, phi0, b, phi_b);
                let vis = coefficients_from_conditioned(&cond, &config)?.visibility();
                checked += 1;
                if vis > VERIFICATION_TOL {
                    failures += 1;
                }
                max_residual = max_residual.max(vis);

                alpha0_plus.push(alpha0);
                alpha0_minus.push(PI - alpha0);
                phi_a0.push(phi0);
                residual.push(vis);
                degenerate.push(false);
                // Signed fold: alpha measured from +z with the azimuth
                // branch absorbed into the sign.
                alpha0_line.push(fold_centered(alpha0));
            }
            ZeroVisSolution::DegenerateAllAlpha => {
                alpha0_plus.push(f64::NAN);
                alpha0_minus.push(f64::NAN);
                alpha0_line.push(f64::NAN);
                phi_a0.push(f64::NAN);
                residual.push(0.0);
                degenerate.push(true);
            }
        }
    }

    if checked > 0 && (failures as f64) > 0.001 * checked as f64 {
        return Err(Error::VerificationFailed {
            failures,
            samples: checked,
        });
    }

    let mut jumps = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if !degenerate[i]
            && !degenerate[i + 1]
            && (alpha0_line[i + 1] - alpha0_line[i]).abs() > 0.5 * PI
        {
            jumps.push(i);
        }
    }

    let vertical_lines = find_vertical_lines(spec, phi_b, &beta);

    Ok(ZeroLine {
        beta,
        alpha0_plus,
        alpha0_minus,
        alpha0_line,
        phi_a0,
        residual,
        degenerate,
        jumps,
        vertical_lines,
        max_residual,
    })
}

/// Signed degeneracy function for a two-group classical state: the
/// difference of conditioned group weights, whose roots are the vertical
/// zero-visibility lines. For single-group (coincident) states the total
/// conditioned weight plays the same role, vanishing only where B never
/// fires its detector.
fn signed_degeneracy(
    spec: &SeparableStateSpec,
    grouping: &[Vec<usize>],
    phi_b: f64,
    beta: f64,
) -> f64 {
    let cond = conditioned_state(spec, &BeamSplitterSetting::real(beta), phi_b);
    match grouping.len() {
        2 => {
            let g0: f64 = grouping[0].iter().map(|&i| cond.weights[i]).sum();
            let g1: f64 = grouping[1].iter().map(|&i| cond.weights[i]).sum();
            g0 - g1
        }
        _ => cond.w_total,
    }
}

/// Locate vertical zero-visibility lines by bracketing sign changes of the
/// signed degeneracy function on the beta grid and refining by bisection to
/// 1e-12. Non-classical states cannot have them (the resultant can vanish
/// only when all A Bloch vectors are parallel).
pub fn find_vertical_lines(spec: &SeparableStateSpec, phi_b: f64, beta_grid: &[f64]) -> Vec<f64> {
    let report = spec.a_classicality(ORTHOGONALITY_TOL);
    if !report.is_a_classical {
        return Vec::new();
    }
    let g = |b: f64| signed_degeneracy(spec, &report.grouping, phi_b, b);

    let n = beta_grid.len();
    let mut roots: Vec<f64> = Vec::new();
    for i in 0..n {
        let b0 = beta_grid[i];
        let b1 = if i + 1 < n { beta_grid[i + 1] } else { TAU };
        let (f0, f1) = (g(b0), g(b1));
        if f0 == 0.0 {
            push_root(&mut roots, b0);
            continue;
        }
        if f0 * f1 < 0.0 {
            let (mut lo, mut hi, mut flo) = (b0, b1, f0);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let fm = g(mid);
                if fm == 0.0 {
                    lo = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            push_root(&mut roots, 0.5 * (lo + hi));
        } else if grouping_is_single(&report.grouping) && f0.abs() < 1e-12 {
            // Tangent zeros of the non-negative total weight.
            push_root(&mut roots, b0);
        }
    }
    roots
}

fn grouping_is_single(grouping: &[Vec<usize>]) -> bool {
    grouping.len() < 2
}

fn push_root(roots: &mut Vec<f64>, b: f64) {
    let b = wrap_tau(b);
    if roots.iter().all(|&r| (r - b).abs() > 1e-9 && (TAU - (r - b).abs()) > 1e-9) {
        roots.push(b);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandscapeKind {
    /// Horizontal zero lines only: the subsystems are uncorrelated.
    Barcode,
    /// Horizontal plus vertical zero lines: classical correlations only.
    Grid,
    /// Beta-dependent zero lines: the state carries A-discord.
    Curved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeClass {
    pub kind: LandscapeKind,
    /// Max |f_alpha - mean| over the beta grid.
    pub f_alpha_variation: f64,
    /// Max |f_phi - mean| over the beta grid.
    pub f_phi_variation: f64,
    pub vertical_lines: Vec<f64>,
}

/// Classify the landscape by the beta-dependence of the zero lines,
/// sampled on `n` beta points.
pub fn classify_landscape(
    spec: &SeparableStateSpec,
    n: usize,
    phi_b: f64,
    tol: f64,
) -> LandscapeClass {
    let beta = periodic_grid(n);
    let mut f_alpha: Vec<f64> = Vec::new();
    let mut f_phi: Vec<f64> = Vec::new();
    for &b in &beta {
        let cond = conditioned_state(spec, &BeamSplitterSetting::real(b), phi_b);
        if let Some(dir) = cond.direction() {
            f_alpha.push(dir.z * dir.z);
            let plane = dir.x * dir.x + dir.y * dir.y;
            if plane >= 1e-24 {
                f_phi.push(dir.x * dir.x / plane);
            }
        }
    }
    let variation = |f: &[f64]| -> f64 {
        if f.is_empty() {
            return 0.0;
        }
        let mean = f.iter().sum::<f64>() / f.len() as f64;
        f.iter().fold(0.0f64, |m, &v| m.max((v - mean).abs()))
    };
    let f_alpha_variation = variation(&f_alpha);
    let f_phi_variation = variation(&f_phi);
    let vertical_lines = find_vertical_lines(spec, phi_b, &beta);

    let kind = if f_alpha_variation <= tol && f_phi_variation <= tol {
        if vertical_lines.is_empty() {
            LandscapeKind::Barcode
        } else {
            LandscapeKind::Grid
        }
    } else {
        LandscapeKind::Curved
    };
    LandscapeClass {
        kind,
        f_alpha_variation,
        f_phi_variation,
        vertical_lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interferometer::visibility;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn frame_vectors_at_origin() {
        let f = frame_vectors(0.0, 0.0);
        assert!((f.a1.x - 1.0).abs() < 1e-15 && f.a1.y.abs() < 1e-15 && f.a1.z.abs() < 1e-15);
        assert!((f.a2.y + 1.0).abs() < 1e-15);
        assert!((f.a3.z - 1.0).abs() < 1e-15);
    }

    #[test]
    fn frame_vectors_are_orthonormal() {
        let mut s = 0.17f64;
        let mut next = || {
            s = (s * 883.0 + 0.41).fract();
            s * TAU
        };
        for _ in 0..100 {
            let f = frame_vectors(next(), next());
            assert!(f.a1.dot(&f.a2).abs() < 1e-14);
            assert!(f.a1.dot(&f.a3).abs() < 1e-14);
            assert!(f.a2.dot(&f.a3).abs() < 1e-14);
            assert!((f.a1.norm() - 1.0).abs() < 1e-14);
            assert!((f.a2.norm() - 1.0).abs() < 1e-14);
            assert!((f.a3.norm() - 1.0).abs() < 1e-14);
            let cross = f.a2.cross(&f.a1);
            assert!((cross.x - f.a3.x).abs() < 1e-14);
            assert!((cross.y - f.a3.y).abs() < 1e-14);
            assert!((cross.z - f.a3.z).abs() < 1e-14);
        }
    }

    #[test]
    fn north_pole_solution_is_alpha_zero() {
        let spec =
            SeparableStateSpec::from_tuples(&[(1.0, (0.0, 0.0), (0.7, 0.0))]).unwrap();
        let cond = conditioned_state(&spec, &BeamSplitterSetting::real(0.3), 0.0);
        match zero_visibility_solve(&cond, (0.0, 0.0)) {
            ZeroVisSolution::Generic { alpha0, .. } => assert!(alpha0.abs() < 1e-12),
            _ => panic!("unexpected degenerate"),
        }
    }

    #[test]
    fn solved_zeros_really_are_zeros() {
        // Discorded mixture; solve at many beta and re-evaluate.
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (0.0, 0.0), (0.0, 0.0)),
            (0.5, (FRAC_PI_2, 0.0), (FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        for k in 0..64 {
            let beta = TAU * k as f64 / 64.0;
            let cond = conditioned_state(&spec, &BeamSplitterSetting::real(beta), 0.0);
            if let ZeroVisSolution::Generic { alpha0, phi_a0, .. } =
                zero_visibility_solve(&cond, (0.0, 0.0))
            {
                let config = InterferometerConfig::from_angles(alpha0, phi_a0, beta, 0.0);
                assert!(visibility(&spec, &config).unwrap() <= 1e-10);
                // The other branch is a zero as well.
                let config2 =
                    InterferometerConfig::from_angles(PI - alpha0, phi_a0 + PI, beta, 0.0);
                assert!(visibility(&spec, &config2).unwrap() <= 1e-10);
            } else {
                panic!("degenerate sample in a discorded state");
            }
        }
    }

    #[test]
    fn complex_state_zero_solution_verified() {
        // A states with azimuthal phases exercise the phi_a0 quadrant.
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (FRAC_PI_2, 0.0), (PI, 0.0)),
            (0.5, (FRAC_PI_2, FRAC_PI_2), (3.0 * FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        for k in 0..64 {
            let beta = TAU * k as f64 / 64.0;
            let cond = conditioned_state(&spec, &BeamSplitterSetting::real(beta), 0.0);
            if let ZeroVisSolution::Generic { alpha0, phi_a0, .. } =
                zero_visibility_solve(&cond, (0.0, 0.0))
            {
                let config = InterferometerConfig::from_angles(alpha0, phi_a0, beta, 0.0);
                assert!(visibility(&spec, &config).unwrap() <= 1e-10);
            }
        }
    }

    #[test]
    fn splitter_phases_shift_the_solved_loop_phase() {
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (FRAC_PI_2, 0.3), (0.4, 0.0)),
            (0.5, (1.9, 2.0), (2.2, 0.0)),
        ])
        .unwrap();
        let beta = 0.9;
        let cond = conditioned_state(&spec, &BeamSplitterSetting::real(beta), 0.0);
        let phases = (0.8, 0.25);
        if let ZeroVisSolution::Generic { alpha0, phi_a0, .. } =
            zero_visibility_solve(&cond, phases)
        {
            let config = InterferometerConfig {
                a_bs: BeamSplitterSetting {
                    mix_angle: alpha0,
                    phi_r: phases.0,
                    phi_t: phases.1,
                },
                phi_a: phi_a0,
                b_bs: BeamSplitterSetting::real(beta),
                phi_b: 0.0,
                detector_bs: BeamSplitterSetting::fifty_fifty(),
            };
            assert!(visibility(&spec, &config).unwrap() <= 1e-10);
        } else {
            panic!("unexpected degenerate");
        }
    }

    #[test]
    fn landscape_grid_shape_and_determinism() {
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (0.0, 0.0), (0.0, 0.0)),
            (0.5, (FRAC_PI_2, 0.0), (FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        let fixed = FixedParams::default();
        let l1 =
            sample_landscape(&spec, Axis::Alpha, Axis::Beta, &fixed, (2, 2)).unwrap();
        assert_eq!(l1.values.len(), 4);
        let l2 =
            sample_landscape(&spec, Axis::Alpha, Axis::Beta, &fixed, (2, 2)).unwrap();
        assert_eq!(l1, l2);

        assert!(matches!(
            sample_landscape(&spec, Axis::Alpha, Axis::Alpha, &fixed, (2, 2)),
            Err(Error::InvalidAxes)
        ));
        assert!(matches!(
            sample_landscape(&spec, Axis::Alpha, Axis::Beta, &fixed, (1, 2)),
            Err(Error::InvalidAxes)
        ));
    }

    #[test]
    fn landscape_minimum_tracks_analytic_zero_for_pure_product() {
        let spec = SeparableStateSpec::from_tuples(&[(1.0, (1.1, 0.0), (0.6, 0.0))]).unwrap();
        let fixed = FixedParams::default();
        let land =
            sample_landscape(&spec, Axis::Alpha, Axis::Beta, &fixed, (257, 16)).unwrap();
        // For each beta row, the analytic zero evaluated directly must be
        // at (numerically) zero visibility.
        for (iy, &beta) in land.y.iter().enumerate() {
            let cond = conditioned_state(&spec, &BeamSplitterSetting::real(beta), 0.0);
            if let ZeroVisSolution::Generic { alpha0, .. } =
                zero_visibility_solve(&cond, (0.0, 0.0))
            {
                // phi_a fixed at 0; for a real pure product the azimuth is
                // 0 so alpha0 is a zero along this slice.
                let config = InterferometerConfig::from_angles(alpha0, 0.0, beta, 0.0);
                assert!(visibility(&spec, &config).unwrap() <= 1e-10);
                // And the sampled row minimum is small near alpha0.
                let row_min = (0..land.x.len())
                    .map(|ix| land.at(ix, iy))
                    .fold(f64::INFINITY, f64::min);
                assert!(row_min < 0.05);
            }
        }
    }

    #[test]
    fn fig_style_orthogonal_state_has_constant_branches() {
        // Equal mixture of |++> and |--|: orthogonal A states, zero lines
        // independent of beta (alpha0 = pi/2), degenerate at sin(beta) = 0.
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (FRAC_PI_2, 0.0), (FRAC_PI_2, 0.0)),
            (0.5, (FRAC_PI_2, PI), (FRAC_PI_2, PI)),
        ])
        .unwrap();
        let line = trace_zero_lines(&spec, 128, 0.0).unwrap();
        assert!(line.max_residual <= 1e-10);
        let mut seen = 0;
        for (i, &a) in line.alpha0_plus.iter().enumerate() {
            if line.degenerate[i] {
                continue;
            }
            seen += 1;
            assert!((a - FRAC_PI_2).abs() < 1e-10);
            assert!((line.alpha0_minus[i] - FRAC_PI_2).abs() < 1e-10);
        }
        assert!(seen > 100);
        // Degenerate verticals at beta = 0 and pi.
        assert_eq!(line.vertical_lines.len(), 2);
        assert!(line.jumps.is_empty());
    }

    #[test]
    fn real_mixture_loop_phase_is_zero_or_pi() {
        // For mixtures whose A components all lie in the x-z half-plane with
        // positive x, the solved loop phase sits at 0; with sign flips of
        // the resultant x-component it may jump to pi, never in between.
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (0.0, 0.0), (0.0, 0.0)),
            (0.5, (FRAC_PI_2, 0.0), (FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        let line = trace_zero_lines(&spec, 256, 0.0).unwrap();
        for (i, &phi) in line.phi_a0.iter().enumerate() {
            if !line.degenerate[i] {
                assert!(
                    phi.abs() < 1e-12 || (phi - PI).abs() < 1e-12,
                    "phi_a0 = {phi} at beta index {i}"
                );
            }
        }
    }

    #[test]
    fn pure_product_line_is_single_constant_branch() {
        let spec = SeparableStateSpec::from_tuples(&[(1.0, (0.0, 0.0), (0.9, 0.0))]).unwrap();
        let line = trace_zero_lines(&spec, 128, 0.0).unwrap();
        for (i, &a) in line.alpha0_plus.iter().enumerate() {
            if !line.degenerate[i] {
                assert!(a.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn classify_curved_for_discorded_state() {
        let spec = SeparableStateSpec::from_tuples(&[
            (0.5, (0.0, 0.0), (0.0, 0.0)),
            (0.5, (FRAC_PI_2, 0.0), (FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        let class = classify_landscape(&spec, 256, 0.0, 1e-10);
        assert_eq!(class.kind, LandscapeKind::Curved);
        assert!(class.f_alpha_variation > 1e-2);
    }

    #[test]
    fn classify_barcode_for_uncorrelated_state() {
        // Coincident A states: rho = rho_A (x) (mixed B), genuinely
        // uncorrelated, no vertical lines.
        let spec = SeparableStateSpec::from_tuples(&[
            (0.3, (FRAC_PI_2, 0.0), (0.0, 0.0)),
            (0.7, (FRAC_PI_2, 0.0), (FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        let class = classify_landscape(&spec, 256, 0.0, 1e-10);
        assert_eq!(class.kind, LandscapeKind::Barcode);
        assert!(class.vertical_lines.is_empty());
    }

    #[test]
    fn classify_grid_for_classically_correlated_state() {
        // Orthogonal A states with distinct B states: classical
        // correlations, vertical line where the group weights balance.
        let spec = SeparableStateSpec::from_tuples(&[
            (0.2, (0.0, 0.0), (FRAC_PI_2, 0.0)),
            (0.8, (PI, 0.0), (3.0 * FRAC_PI_2, 0.0)),
        ])
        .unwrap();
        let class = classify_landscape(&spec, 512, 0.0, 1e-10);
        assert_eq!(class.kind, LandscapeKind::Grid);
        assert!(!class.vertical_lines.is_empty());
        for &b in &class.vertical_lines {
            assert!((b.sin() - 0.6).abs() < 1e-6);
        }
    }
}
