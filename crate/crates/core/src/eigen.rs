//! Hermitian eigenvalues for the two fixed sizes used by the crate.
//!
//! The 2x2 path is the closed-form trace/determinant formula. The 4x4 path
//! embeds the Hermitian matrix H = A + iB into the real symmetric 8x8 block
//! matrix [[A, -B], [B, A]] (whose spectrum is that of H with every
//! eigenvalue doubled) and runs cyclic Jacobi sweeps. Both sizes are tiny,
//! so robustness is worth more than asymptotics.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{Mat2, Mat4};

/// Inputs farther than this from self-adjointness are rejected.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
const JACOBI_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian 2x2 matrix, descending.
pub fn eigenvalues2(m: &Mat2) -> Result<[f64; 2]> {
    let asymmetry = m.asymmetry();
    if asymmetry > HERMITICITY_TOL {
        return Err(Error::NonHermitian { asymmetry });
    }
    // Symmetrize so the tiny asymmetry cannot leak into the result.
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = (m.0[0][1] + m.0[1][0].conj()) * 0.5;
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    Ok([mid + rad, mid - rad])
}

/// Eigenvalues of a Hermitian 4x4 matrix, descending.
pub fn eigenvalues4(m: &Mat4) -> Result<[f64; 4]> {
    let asymmetry = m.asymmetry();
    if asymmetry > HERMITICITY_TOL {
        return Err(Error::NonHermitian { asymmetry });
    }

    // Real symmetric embedding of (M + M^dagger)/2.
    let mut e = [[0.0f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = (m.0[i][j] + m.0[j][i].conj()) * 0.5;
            e[i][j] = z.re;
            e[i + 4][j + 4] = z.re;
            e[i][j + 4] = -z.im;
            e[i + 4][j] = z.im;
        }
    }

    jacobi_symmetric(&mut e);

    let mut diag = [0.0f64; 8];
    for i in 0..8 {
        diag[i] = e[i][i];
    }
    sort_descending(&mut diag);
    // Every eigenvalue of the complex matrix appears twice in the embedding.
    Ok([diag[0], diag[2], diag[4], diag[6]])
}

fn off_norm(e: &[[f64; 8]; 8]) -> f64 {
    let mut s = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            if i != j {
                s += e[i][j] * e[i][j];
            }
        }
    }
    s.sqrt()
}

fn jacobi_symmetric(e: &mut [[f64; 8]; 8]) {
    for _ in 0..MAX_SWEEPS {
        if off_norm(e) < JACOBI_TOL {
            return;
        }
        for p in 0..7 {
            for q in (p + 1)..8 {
                let apq = e[p][q];
                if apq.abs() < JACOBI_TOL / 64.0 {
                    continue;
                }
                let app = e[p][p];
                let aqq = e[q][q];
                let theta = 0.5 * (aqq - app) / apq;
                // Stable tangent of the rotation angle.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;

                for k in 0..8 {
                    let ekp = e[k][p];
                    let ekq = e[k][q];
                    e[k][p] = cos * ekp - sin * ekq;
                    e[k][q] = sin * ekp + cos * ekq;
                }
                for k in 0..8 {
                    let epk = e[p][k];
                    let eqk = e[q][k];
                    e[p][k] = cos * epk - sin * eqk;
                    e[q][k] = sin * epk + cos * eqk;
                }
            }
        }
    }
}

fn sort_descending(v: &mut [f64]) {
    // Insertion sort; slices here have at most 8 entries.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            j -= 1;
        }
    }
}
