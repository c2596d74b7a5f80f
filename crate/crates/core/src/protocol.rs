//! Shot-level Monte-Carlo emulation of the measurement protocol.
//!
//! Each shot prepares one component of the mixture (drawn with the mixture
//! weights, emulating the randomly switched source splitters) and records
//! which detector fires on each side. Coincidence counts estimate the
//! correlation K, and sweeping the detection phase recovers the fringe
//! coefficients by weighted linear least squares.
//!
//! Randomness discipline: the generator is ChaCha8. A batch of `n` shots is
//! split into fixed blocks of 2^20 shots; block `b` runs its own stream
//! seeded with `splitmix64(seed XOR b * 0x9E3779B97F4A7C15)`, and within a
//! block each shot consumes exactly two u64 draws (component, then joint
//! outcome), each mapped to [0, 1) via the top 53 bits. Batches are
//! therefore byte-identical for identical inputs and independent of how
//! blocks are distributed over workers.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::interferometer::{a_side_matrix, scattering_matrix, InterferometerConfig};
use crate::matrix::C64;
use crate::states::SeparableStateSpec;

/// Shots per RNG block.
pub const BLOCK_SHOTS: u64 = 1 << 20;

/// Joint-outcome counts of one simulated batch, indexed as
/// (A detector, B detector) = (D1,D1), (D1,D2), (D2,D1), (D2,D2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotBatch {
    pub n_shots: u64,
    pub seed: u64,
    pub counts: [u64; 4],
}

/// Derive the RNG seed of one block from the batch seed.
pub fn block_seed(seed: u64, block: u64) -> u64 {
    let mut z = seed ^ block.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn unit_f64(x: u64) -> f64 {
    // Top 53 bits; uniform on [0, 1).
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Per-component joint detector probabilities. Because each mixture
/// component is a product state, the joint table factorizes into the A-side
/// and B-side marginals.
pub fn outcome_distribution(
    spec: &SeparableStateSpec,
    config: &InterferometerConfig,
    phi_d: f64,
) -> Vec<[f64; 4]> {
    let m_a = a_side_matrix(config, phi_d);
    let s_b = scattering_matrix(&config.b_bs, config.phi_b);
    spec.components()
        .iter()
        .map(|comp| {
            let pa = click_probability(&m_a, &comp.a_state.ket());
            let pb = click_probability(&s_b, &comp.b_state.ket());
            [pa * pb, pa * (1.0 - pb), (1.0 - pa) * pb, (1.0 - pa) * (1.0 - pb)]
        })
        .collect()
}

fn click_probability(m: &crate::matrix::Mat2, ket: &[C64; 2]) -> f64 {
    let out = m.apply(ket);
    out[0].norm_sqr().clamp(0.0, 1.0)
}

/// Simulate `n_shots` source emissions. Deterministic for fixed inputs;
/// see the module docs for the stream discipline.
pub fn sample_shots(
    spec: &SeparableStateSpec,
    config: &InterferometerConfig,
    phi_d: f64,
    n_shots: u64,
    seed: u64,
) -> ShotBatch {
    let tables = outcome_distribution(spec, config, phi_d);
    let weights: Vec<f64> = spec.components().iter().map(|c| c.weight).collect();

    let mut counts = [0u64; 4];
    let blocks = n_shots.div_ceil(BLOCK_SHOTS);
    for b in 0..blocks {
        let in_block = (n_shots - b * BLOCK_SHOTS).min(BLOCK_SHOTS);
        let block = sample_block(&weights, &tables, block_seed(seed, b), in_block);
        for k in 0..4 {
            counts[k] += block[k];
        }
    }
    ShotBatch {
        n_shots,
        seed,
        counts,
    }
}

/// One contiguous block of shots on its own RNG stream. Exposed so callers
/// may distribute blocks across workers; summing the per-block counts in
/// block order reproduces [`sample_shots`] exactly.
pub fn sample_block(
    weights: &[f64],
    tables: &[[f64; 4]],
    block_seed: u64,
    shots: u64,
) -> [u64; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(block_seed);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        let u_component = unit_f64(rng.next_u64());
        let u_outcome = unit_f64(rng.next_u64());

        let mut nu = weights.len() - 1;
        let mut acc = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            acc += w;
            if u_component < acc {
                nu = i;
                break;
            }
        }

        let table = &tables[nu];
        let mut outcome = 3;
        let mut acc = 0.0;
        for (i, &p) in table.iter().enumerate().take(3) {
            acc += p;
            if u_outcome < acc {
                outcome = i;
                break;
            }
        }
        counts[outcome] += 1;
    }
    counts
}

/// Coincidence estimator of the correlation K.
pub fn estimate_k(batch: &ShotBatch) -> f64 {
    batch.counts[0] as f64 / batch.n_shots as f64
}

/// Result of fitting the fringe model `K = C + 2 Re(A) cos(phi) - 2 Im(A) sin(phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeFit {
    pub c_hat: f64,
    pub a_mag_hat: f64,
    pub a_phase_hat: f64,
    pub v_hat: f64,
    pub stderr_v: f64,
    pub residual_rms: f64,
}

impl FringeFit {
    pub fn amplitude(&self) -> C64 {
        C64::from_polar(self.a_mag_hat, self.a_phase_hat)
    }
}

/// Weighted linear least squares on estimates of K at several detection
/// phases; each point carries its binomial weight `n / (k (1 - k))`.
///
/// Needs at least three distinct phases for the three unknowns
/// (C, Re A, Im A).
pub fn fit_visibility(points: &[(f64, f64, u64)]) -> Result<FringeFit> {
    let mut distinct: Vec<f64> = Vec::new();
    for &(phi, _, _) in points {
        let phi = crate::bloch::wrap_tau(phi);
        if distinct.iter().all(|&p| (p - phi).abs() > 1e-12) {
            distinct.push(phi);
        }
    }
    if distinct.len() < 3 {
        return Err(Error::InsufficientPhases {
            distinct: distinct.len(),
        });
    }

    // Normal equations X^T W X u = X^T W y with rows (1, 2cos, -2sin).
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(phi, k, n) in points {
        let row = [1.0, 2.0 * phi.cos(), -2.0 * phi.sin()];
        let var = (k * (1.0 - k)).max(1e-12) / (n.max(1) as f64);
        let w = 1.0 / var;
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += w * row[i] * row[j];
            }
            aty[i] += w * row[i] * k;
        }
    }

    let cov = invert3(&ata).ok_or(Error::DegenerateDesign)?;
    let mut u = [0.0f64; 3];
    for i in 0..3 {
        for j in 0..3 {
            u[i] += cov[i][j] * aty[j];
        }
    }
    let (c_hat, re_a, im_a) = (u[0], u[1], u[2]);
    let a_mag = (re_a * re_a + im_a * im_a).sqrt();
    let a_phase = im_a.atan2(re_a);
    let v_hat = if a_mag == 0.0 && c_hat == 0.0 {
        0.0
    } else {
        a_mag / c_hat
    };

    // Delta-method error on |A|/C; at |A| ~ 0 fall back to the combined
    // amplitude spread, which upper-bounds the gradient form.
    let stderr_v = if a_mag > 1e-12 * c_hat.abs().max(1.0) {
        let g = [
            -a_mag / (c_hat * c_hat),
            re_a / (a_mag * c_hat),
            im_a / (a_mag * c_hat),
        ];
        let mut var = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                var += g[i] * cov[i][j] * g[j];
            }
        }
        var.max(0.0).sqrt()
    } else {
        ((cov[1][1] + cov[2][2]).max(0.0)).sqrt() / c_hat.abs().max(1e-12)
    };

    let mut ss = 0.0;
    for &(phi, k, _) in points {
        let model = c_hat + 2.0 * re_a * phi.cos() - 2.0 * im_a * phi.sin();
        ss += (k - model) * (k - model);
    }
    let residual_rms = (ss / points.len() as f64).sqrt();

    Ok(FringeFit {
        c_hat,
        a_mag_hat: a_mag,
        a_phase_hat: a_phase,
        v_hat,
        stderr_v,
        residual_rms,
    })
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if !det.is_finite() || det.abs() < 1e-12 * scale.powi(3).max(1e-300) {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut out = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            let (c, d) = ((j + 1) % 3, (j + 2) % 3);
            // Adjugate with the transpose folded in.
            out[j][i] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) * inv_det;
        }
    }
    Some(out)
}
