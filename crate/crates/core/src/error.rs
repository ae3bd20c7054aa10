//! Error type shared by every fallible operation in the crate.

use crate::quad::RuleKind;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, FockError>;

/// All failure modes of constructors, transforms and analysis routines.
#[derive(Debug, Error)]
pub enum FockError {
    /// A quadrature rule was requested with an invalid size.
    #[error("invalid quadrature size: {0}")]
    InvalidRuleSize(String),

    /// A routine received a rule of the wrong kind.
    #[error("quadrature rule kind mismatch: expected {expected:?}, got {got:?}")]
    RuleKindMismatch { expected: RuleKind, got: RuleKind },

    /// Matrix dimensions do not line up (composition, linear combination).
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A computed or supplied value was NaN or infinite where finiteness is required.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// A scalar parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Composition symbols `phi(w) = a + lambda w` require `|lambda| <= 1`.
    #[error("composition slope must satisfy |lambda| <= 1, got |lambda| = {0}")]
    LambdaOutOfRange(f64),

    /// Hausdorff measures must satisfy `rho((0,1)) = 0`.
    #[error("measure is not supported on [1, oo): {0}")]
    MeasureSupport(String),

    /// The canonical kernel grows like `e^{(|z|^2+|w|^2)/2}`; evaluations are
    /// refused outside the guarded disc.
    #[error("canonical kernel overflow guard: need |z|, |w| <= {max}, got |z| = {z}, |w| = {w}")]
    KernelOverflow { max: f64, z: f64, w: f64 },

    /// A symbol evaluated to a non-finite value on the quadrature support.
    #[error("symbol is unbounded on the quadrature support: {0}")]
    UnboundedSymbol(String),

    /// A requested operation is not defined for the given input family.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A quadrature grid failed its internal resolution check (e.g. a
    /// numerically Fourier-transformed basis function lost its norm).
    #[error("quadrature grid resolution failure: {0}")]
    QuadratureResolution(String),
}
