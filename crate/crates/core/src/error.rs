//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input to a Hermitian eigensolver deviated from self-adjointness by
    /// more than the tolerance.
    #[error("matrix is not hermitian (max asymmetry {asymmetry:e})")]
    NonHermitian { asymmetry: f64 },

    /// A density matrix carried an eigenvalue below the round-off window.
    #[error("density matrix has eigenvalue {value:e} below -1e-12")]
    NegativeEigenvalue { value: f64 },

    /// Component weights are negative or do not sum to one within the
    /// renormalization window.
    #[error("invalid component weights: {reason} (sum {sum})")]
    InvalidWeights { reason: &'static str, sum: f64 },

    /// The mean term of the fringe vanished while the oscillating amplitude
    /// did not; the reconstructed correlation would leave [0, 1].
    #[error("zero mean term with finite oscillation amplitude {amplitude:e}")]
    ZeroMeanTerm { amplitude: f64 },

    /// Landscape axes must be two distinct scan parameters.
    #[error("invalid landscape axes")]
    InvalidAxes,

    /// An analytically claimed zero-visibility point failed direct
    /// re-evaluation; usually a convention mismatch upstream.
    #[error("zero-line verification failed: {failures} of {samples} samples above 1e-8")]
    VerificationFailed { failures: usize, samples: usize },

    /// Fringe fitting needs at least three distinct detection phases.
    #[error("fringe fit needs >= 3 distinct phases, got {distinct}")]
    InsufficientPhases { distinct: usize },

    /// The fringe-fit normal equations are singular (collinear phases).
    #[error("fringe fit design matrix is singular")]
    DegenerateDesign,
}

pub type Result<T> = core::result::Result<T, Error>;
