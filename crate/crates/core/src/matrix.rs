//! Dense 2x2 and 4x4 complex matrices.
//!
//! The two-qubit composite space uses the fixed basis ordering A (x) B:
//! `|uu>, |ud>, |du>, |dd>` with the A index varying slowest. All tensor
//! products and partial traces in the crate assume this ordering.

use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub const fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Which tensor factor of a two-qubit operator to trace out or keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// 4x4 complex matrix, row-major, basis ordering A (x) B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[cr(0.0); 2]; 2]);
    pub const IDENTITY: Mat2 = Mat2([[cr(1.0), cr(0.0)], [cr(0.0), cr(1.0)]]);

    pub const fn new(m00: C64, m01: C64, m10: C64, m11: C64) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        Mat2::new(d0, cr(0.0), cr(0.0), d1)
    }

    /// Pauli matrices (sigma_1, sigma_2, sigma_3).
    pub fn pauli() -> [Mat2; 3] {
        [
            Mat2::new(cr(0.0), cr(1.0), cr(1.0), cr(0.0)),
            Mat2::new(cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)),
            Mat2::new(cr(1.0), cr(0.0), cr(0.0), cr(-1.0)),
        ]
    }

    /// Outer product |v><w|.
    pub fn outer(v: &[C64; 2], w: &[C64; 2]) -> Self {
        let mut m = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    /// Largest entrywise deviation from the adjoint.
    pub fn asymmetry(&self) -> f64 {
        let adj = self.adjoint();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - adj.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Apply a vector: M |v>.
    pub fn apply(&self, v: &[C64; 2]) -> [C64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// Tensor product with another single-qubit operator, self acting on A.
    pub fn kron(&self, b: &Mat2) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = self.0[i][j] * b.0[k][l];
                    }
                }
            }
        }
        m
    }
}

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[cr(0.0); 4]; 4]);

    pub fn identity() -> Self {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            m.0[i][i] = cr(1.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        m
    }

    pub fn asymmetry(&self) -> f64 {
        let adj = self.adjoint();
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - adj.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Trace out one subsystem. With basis ordering A (x) B the element
    /// (2i+k, 2j+l) couples A indices (i, j) and B indices (k, l).
    pub fn partial_trace(&self, traced: Subsystem) -> Mat2 {
        let mut m = Mat2::ZERO;
        match traced {
            // Keep A, sum over B diagonal.
            Subsystem::B => {
                for i in 0..2 {
                    for j in 0..2 {
                        m.0[i][j] = self.0[2 * i][2 * j] + self.0[2 * i + 1][2 * j + 1];
                    }
                }
            }
            // Keep B, sum over A diagonal.
            Subsystem::A => {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[k][l] = self.0[k][l] + self.0[2 + k][2 + l];
                    }
                }
            }
        }
        m
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut m = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        m
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = cr(0.0);
                for k in 0..4 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }
}
