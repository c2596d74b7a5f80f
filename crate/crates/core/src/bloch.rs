//! Bloch-sphere parameterization of single-qubit pure states.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use core::f64::consts::{PI, TAU};

use crate::matrix::{cr, C64, Mat2};

/// Polar/azimuthal angles of a pure qubit state
/// `|n> = cos(theta/2)|u> + e^{i phi} sin(theta/2)|d>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    /// Polar angle in [0, pi].
    pub theta: f64,
    /// Azimuthal angle in [0, 2pi).
    pub phi: f64,
}

/// Real three-vector on (or inside) the Bloch sphere. Pure states are unit
/// vectors; conditioned-state resultants may have any norm >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Reduce an angle into [0, 2pi).
pub fn wrap_tau(x: f64) -> f64 {
    let mut r = x % TAU;
    if r < 0.0 {
        r += TAU;
    }
    if r >= TAU {
        r = 0.0;
    }
    r
}

/// Reduce an angle into [0, pi) modulo pi.
pub fn wrap_pi(x: f64) -> f64 {
    let mut r = x % PI;
    if r < 0.0 {
        r += PI;
    }
    if r >= PI {
        r = 0.0;
    }
    r
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Self {
        BlochAngles { theta, phi }
    }

    /// Bring (theta, phi) into the canonical ranges [0, pi] x [0, 2pi)
    /// without moving the point on the sphere.
    pub fn canonicalize(&self) -> Self {
        let mut theta = self.theta % TAU;
        if theta < 0.0 {
            theta += TAU;
        }
        let mut phi = self.phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        BlochAngles {
            theta,
            phi: wrap_tau(phi),
        }
    }

    /// State vector amplitudes (up, down).
    pub fn ket(&self) -> [C64; 2] {
        let half = 0.5 * self.theta;
        [
            cr(half.cos()),
            C64::from_polar(half.sin(), self.phi),
        ]
    }

    /// Cartesian unit vector (sin t cos p, sin t sin p, cos t).
    pub fn bloch_vector(&self) -> BlochVector {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        BlochVector {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    /// Pure-state density matrix rho = (1 + n.sigma)/2 = |n><n|.
    pub fn density(&self) -> Mat2 {
        let k = self.ket();
        Mat2::outer(&k, &k)
    }
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn dot(&self, o: &BlochVector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &BlochVector) -> BlochVector {
        BlochVector {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector {
            x: self.x * s,
            y: self.y * s,
            z: self.z * s,
        }
    }

    pub fn add(&self, o: &BlochVector) -> BlochVector {
        BlochVector {
            x: self.x + o.x,
            y: self.y + o.y,
            z: self.z + o.z,
        }
    }

    /// Polar angle in [0, pi] and azimuth in [0, 2pi) of the direction.
    /// Meaningful only for nonzero vectors.
    pub fn polar(&self) -> (f64, f64) {
        let r = self.norm();
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let theta = (self.z / r).clamp(-1.0, 1.0).acos();
        let phi = wrap_tau(self.y.atan2(self.x));
        (theta, phi)
    }

    /// Density matrix (W + n.sigma)/2 for a (possibly unnormalized) vector
    /// with total weight `w`.
    pub fn density_with_weight(&self, w: f64) -> Mat2 {
        let [sx, sy, sz] = Mat2::pauli();
        let mut m = Mat2::IDENTITY.scale(w);
        m = m + sx.scale(self.x) + sy.scale(self.y) + sz.scale(self.z);
        m.scale(0.5)
    }

    /// Extract the Bloch vector of a 2x2 density matrix: n_i = Tr(rho sigma_i).
    pub fn from_density(rho: &Mat2) -> BlochVector {
        BlochVector {
            x: 2.0 * rho.0[1][0].re,
            y: 2.0 * rho.0[1][0].im,
            z: (rho.0[0][0] - rho.0[1][1]).re,
        }
    }
}
