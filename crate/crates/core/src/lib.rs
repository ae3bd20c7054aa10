//! Numerical laboratory for operators on the Fock space `F^2` of entire
//! functions that are square-integrable against the Gaussian measure
//! `dmu(z) = pi^{-1} e^{-|z|^2} dA(z)`.
//!
//! The crate is organized in four layers:
//!
//! 1. **Foundations** — the monomial orthonormal basis, reproducing kernels,
//!    and Gaussian quadrature rules ([`basis`], [`quad`]).
//! 2. **Symbols** — evaluable symbol functions on the plane, the line, and
//!    the positive axis, with closed-form smoothing and translation
//!    ([`symbols`]).
//! 3. **Operators** — truncated matrix constructors for the operator zoo:
//!    Toeplitz, Weyl, weighted composition, Volterra, singular integral,
//!    Toeplitz-type (Fourier multiplier), and Hausdorff operators
//!    ([`operators`], [`spec`]).
//! 4. **Transforms and analysis** — Berezin transforms, Weyl transform,
//!    quantum harmonic analysis, Bargmann transform, and spectral /
//!    index / distance diagnostics ([`transforms`], [`analysis`]).
//!
//! Truncations are exact where the matrix entries have closed forms and are
//! produced by quadrature otherwise; every constructor records which.

// Guards written as `!(x > 0.0)` are deliberate: they reject NaN along with
// the out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod error;
pub mod operators;
pub mod quad;
pub mod spec;
pub mod symbols;
pub mod transforms;
pub mod types;

pub use error::{FockError, Result};
pub use operators::{Provenance, TruncatedOperator};
pub use spec::{build_operator, OperatorSpec};
pub use quad::{
    integrate_gaussian, make_rule, QuadratureRule, RuleKind, RuleSet, RuleSizes,
};
pub use symbols::{
    AnalyticSpec, LineProfile, MeasureSpec, RadialProfile, SymbolSpec, VerticalSign,
};
pub use types::{ComplexPoint, Flagged};
