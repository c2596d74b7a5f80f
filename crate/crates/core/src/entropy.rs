//! Von Neumann entropy, in bits.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::eigen::{eigenvalues2, eigenvalues4};
use crate::error::{Error, Result};
use crate::matrix::{Mat2, Mat4};

/// Round-off window: eigenvalues in [-1e-12, 0) clamp to zero, anything
/// more negative is a genuinely invalid state.
const NEGATIVE_EIG_TOL: f64 = 1e-12;

/// Binary entropy h(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    plogp(p) + plogp(1.0 - p)
}

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

fn entropy_of_eigenvalues(eigs: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigs {
        if l < -NEGATIVE_EIG_TOL {
            return Err(Error::NegativeEigenvalue { value: l });
        }
        s += plogp(l.clamp(0.0, 1.0));
    }
    Ok(s)
}

/// Entropy of a single-qubit density matrix.
pub fn von_neumann2(rho: &Mat2) -> Result<f64> {
    entropy_of_eigenvalues(&eigenvalues2(rho)?)
}

/// Entropy of a two-qubit density matrix.
pub fn von_neumann4(rho: &Mat4) -> Result<f64> {
    entropy_of_eigenvalues(&eigenvalues4(rho)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::BlochAngles;
    use crate::matrix::cr;

    #[test]
    fn pure_states_have_zero_entropy() {
        for (t, p) in [(0.0, 0.0), (1.2, 0.4), (2.9, 5.5)] {
            let rho = BlochAngles::new(t, p).density();
            assert!(von_neumann2(&rho).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_mixed_qubit_is_one_bit() {
        let rho = Mat2::IDENTITY.scale(0.5);
        assert!((von_neumann2(&rho).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn three_quarters_mixture() {
        let rho = Mat2::diag(cr(0.75), cr(0.25));
        let s = von_neumann2(&rho).unwrap();
        // Independent evaluation of -sum p log2 p.
        let expect = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert!((s - expect).abs() < 1e-14);
        assert!((s - 0.8112781).abs() < 1e-7);
    }

    #[test]
    fn entropy_is_additive_over_products() {
        let a = BlochAngles::new(0.3, 1.0).density().scale(0.6)
            + BlochAngles::new(2.0, 4.0).density().scale(0.4);
        let b = BlochAngles::new(1.1, 0.2).density().scale(0.75)
            + BlochAngles::new(2.5, 3.3).density().scale(0.25);
        let ab = a.kron(&b);
        let s = von_neumann4(&ab).unwrap();
        let expect = von_neumann2(&a).unwrap() + von_neumann2(&b).unwrap();
        assert!((s - expect).abs() < 1e-10);
    }

    #[test]
    fn rejects_genuinely_negative_eigenvalue() {
        let rho = Mat2::diag(cr(1.1), cr(-0.1));
        assert!(matches!(
            von_neumann2(&rho),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }
}
