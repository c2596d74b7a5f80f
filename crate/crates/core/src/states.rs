//! Separable two-qubit state specifications.
//!
//! A state is a weighted mixture of pure product components
//! `rho = sum_v w_v |A_v><A_v| (x) |B_v><B_v|`. Whether the mixture carries
//! A-discord is entirely a property of the geometry of the A components:
//! the state is A-classical exactly when the `|A_v>` split into at most two
//! groups that are internally coincident (up to phase) and mutually
//! orthogonal.

use alloc::vec::Vec;

use crate::bloch::BlochAngles;
use crate::error::{Error, Result};
use crate::matrix::Mat4;

/// Default tolerance on overlap magnitudes when deciding classicality.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Weight sums outside [1 - this, 1 + this] are rejected rather than
/// renormalized.
const WEIGHT_SUM_WINDOW: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateComponent {
    /// Mixture probability, non-negative.
    pub weight: f64,
    pub a_state: BlochAngles,
    pub b_state: BlochAngles,
}

/// Validated mixture of pure product states. Construct via
/// [`SeparableStateSpec::new`], which normalizes weights and angles.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableStateSpec {
    components: Vec<StateComponent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalityReport {
    pub is_a_classical: bool,
    /// Partition of component indices into at most two mutually orthogonal
    /// groups; empty when the state is not classical.
    pub grouping: Vec<Vec<usize>>,
    /// Largest deviation of any pairwise |<A_u|A_v>| from the set {0, 1}.
    pub gram_offset: f64,
}

impl SeparableStateSpec {
    /// Validate and canonicalize a component list: weights must be
    /// non-negative and sum to one within 1e-9 (then renormalized exactly);
    /// angles are folded into [0, pi] x [0, 2pi).
    pub fn new(components: Vec<StateComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeights {
                reason: "no components",
                sum: 0.0,
            });
        }
        let mut sum = 0.0;
        for comp in &components {
            if comp.weight < 0.0 || !comp.weight.is_finite() {
                return Err(Error::InvalidWeights {
                    reason: "negative weight",
                    sum: comp.weight,
                });
            }
            sum += comp.weight;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_WINDOW {
            return Err(Error::InvalidWeights {
                reason: "weights do not sum to 1",
                sum,
            });
        }
        let components = components
            .into_iter()
            .map(|comp| StateComponent {
                weight: comp.weight / sum,
                a_state: comp.a_state.canonicalize(),
                b_state: comp.b_state.canonicalize(),
            })
            .collect();
        Ok(SeparableStateSpec { components })
    }

    /// Convenience constructor from (weight, (theta_A, phi_A), (theta_B, phi_B)).
    #[allow(clippy::type_complexity)]
    pub fn from_tuples(parts: &[(f64, (f64, f64), (f64, f64))]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .map(|&(w, a, b)| StateComponent {
                    weight: w,
                    a_state: BlochAngles::new(a.0, a.1),
                    b_state: BlochAngles::new(b.0, b.1),
                })
                .collect(),
        )
    }

    pub fn components(&self) -> &[StateComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Assemble the full 4x4 density matrix `sum_v w_v rho^A_v (x) rho^B_v`.
    pub fn density(&self) -> Mat4 {
        let mut rho = Mat4::ZERO;
        for comp in &self.components {
            let term = comp
                .a_state
                .density()
                .kron(&comp.b_state.density())
                .scale(comp.weight);
            rho = rho + term;
        }
        rho
    }

    /// Decide whether the A components form an orthogonal/coincident
    /// structure (no A-discord regardless of the B states).
    pub fn a_classicality(&self, tol: f64) -> ClassicalityReport {
        let n = self.components.len();
        let kets: Vec<_> = self
            .components
            .iter()
            .map(|comp| comp.a_state.ket())
            .collect();
        let overlap = |i: usize, j: usize| -> f64 {
            let inner = kets[i][0].conj() * kets[j][0] + kets[i][1].conj() * kets[j][1];
            inner.norm()
        };

        let mut gram_offset = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let ov = overlap(i, j);
                gram_offset = gram_offset.max(ov.min((1.0 - ov).abs()));
            }
        }
        if gram_offset > tol {
            return ClassicalityReport {
                is_a_classical: false,
                grouping: Vec::new(),
                gram_offset,
            };
        }

        // Merge coincident components; a qubit admits at most two mutually
        // orthogonal groups, and gram_offset <= tol already guarantees
        // consistency.
        let mut grouping: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let mut placed = false;
            for group in grouping.iter_mut() {
                if overlap(group[0], i) > 0.5 {
                    group.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                grouping.push(alloc::vec![i]);
            }
        }
        ClassicalityReport {
            is_a_classical: true,
            grouping,
            gram_offset,
        }
    }
}
