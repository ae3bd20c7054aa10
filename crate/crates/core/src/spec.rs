//! Operator descriptions and the dispatching constructor.
//!
//! [`OperatorSpec`] is the serializable recipe for every operator class the
//! laboratory knows how to build; [`build_operator`] turns a recipe into a
//! [`TruncatedOperator`](crate::operators::TruncatedOperator) at a chosen
//! truncation dimension. Files use a `{class, params}` layout with complex
//! numbers written as `[re, im]` pairs.

use crate::error::{FockError, Result};
use crate::operators::{
    hausdorff_matrix, parity_matrix, shift_a_k_matrix, singular_integral_matrix_multiplier,
    toeplitz_matrix, toeplitz_type_matrix, volterra_matrix, weighted_composition_matrix,
    weyl_matrix, TruncatedOperator,
};
use crate::quad::RuleSet;
use crate::symbols::{AnalyticSpec, LineProfile, MeasureSpec, SymbolSpec};
use crate::types::ComplexPoint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A parametric description of an operator in the zoo.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "params", rename_all = "kebab-case")]
pub enum OperatorSpec {
    /// Toeplitz operator `T_f = P M_f`.
    Toeplitz { symbol: SymbolSpec },
    /// Weyl operator `W_z f(w) = k_z(w) f(w - z)`.
    Weyl { z: ComplexPoint },
    /// Weighted composition operator `W_{psi,phi} f = psi * (f o phi)` with
    /// `phi(w) = a + lambda w`.
    WeightedComposition { psi: AnalyticSpec, a: ComplexPoint, lambda: ComplexPoint },
    /// Singular integral operator `S_phi` given by its Fourier multiplier `m`.
    SingularIntegral { m: LineProfile },
    /// Volterra-type operator `V f(z) = int_0^z f(a + lambda w) g'(w) dw`.
    Volterra { gprime: AnalyticSpec, a: ComplexPoint, lambda: ComplexPoint },
    /// Toeplitz-type operator `T_f^{(j)} = (1/pi) f * (e_j (x) e_j)`.
    ToeplitzType { symbol: SymbolSpec, j: u32 },
    /// Hausdorff operator averaging dilations against the measure `rho`.
    Hausdorff { rho: MeasureSpec },
    /// The shift `A^{[k]}`.
    Shift { k: u32 },
    /// The parity operator `R f(z) = f(-z)`.
    Parity,
}

impl OperatorSpec {
    /// A short human-readable tag for provenance strings and reports.
    pub fn label(&self) -> String {
        match self {
            OperatorSpec::Toeplitz { symbol } => format!("toeplitz[{}]", symbol_label(symbol)),
            OperatorSpec::Weyl { z } => format!("weyl[z=({}, {}i)]", z.re, z.im),
            OperatorSpec::WeightedComposition { a, lambda, .. } => format!(
                "wco[a=({}, {}i), lambda=({}, {}i)]",
                a.re, a.im, lambda.re, lambda.im
            ),
            OperatorSpec::SingularIntegral { .. } => "singular-integral".into(),
            OperatorSpec::Volterra { a, lambda, .. } => format!(
                "volterra[a=({}, {}i), lambda=({}, {}i)]",
                a.re, a.im, lambda.re, lambda.im
            ),
            OperatorSpec::ToeplitzType { symbol, j } => {
                format!("toeplitz-type[{}, j={j}]", symbol_label(symbol))
            }
            OperatorSpec::Hausdorff { rho } => format!(
                "hausdorff[{} atoms{}]",
                rho.atoms.len(),
                if rho.density.is_some() { ", density" } else { "" }
            ),
            OperatorSpec::Shift { k } => format!("shift[k={k}]"),
            OperatorSpec::Parity => "parity".into(),
        }
    }

    /// Checks the constructor preconditions that do not depend on the
    /// truncation dimension. Violations here map to "precondition violated"
    /// rather than parse errors.
    pub fn validate(&self) -> Result<()> {
        match self {
            OperatorSpec::Toeplitz { symbol } => symbol.validate(),
            OperatorSpec::Weyl { .. } | OperatorSpec::Shift { .. } | OperatorSpec::Parity => Ok(()),
            OperatorSpec::WeightedComposition { lambda, .. }
            | OperatorSpec::Volterra { lambda, .. } => {
                let l = Complex64::from(*lambda).norm();
                if l > 1.0 + 1e-12 {
                    Err(FockError::LambdaOutOfRange(l))
                } else {
                    Ok(())
                }
            }
            OperatorSpec::SingularIntegral { m } => m.validate(),
            OperatorSpec::ToeplitzType { symbol, .. } => {
                symbol.validate()?;
                if symbol.sup_abs().is_none() {
                    return Err(FockError::UnboundedSymbol(
                        "toeplitz-type requires a bounded symbol".into(),
                    ));
                }
                Ok(())
            }
            OperatorSpec::Hausdorff { rho } => rho.validate(),
        }
    }
}

/// Builds the truncated matrix described by `spec` at dimension `dim`.
///
/// Quadrature-backed classes take their rules from `rules`: Toeplitz and
/// Toeplitz-type use the full planar rule, the singular integral class uses
/// the line rule (through its multiplier factorization). Series-built classes
/// ignore `rules` entirely.
pub fn build_operator(
    spec: &OperatorSpec,
    dim: usize,
    rules: &RuleSet,
) -> Result<TruncatedOperator> {
    spec.validate()?;
    match spec {
        OperatorSpec::Toeplitz { symbol } => toeplitz_matrix(symbol, dim, &rules.planar),
        OperatorSpec::Weyl { z } => weyl_matrix(z.c64(), dim),
        OperatorSpec::WeightedComposition { psi, a, lambda } => {
            weighted_composition_matrix(psi, a.c64(), lambda.c64(), dim)
        }
        OperatorSpec::SingularIntegral { m } => {
            singular_integral_matrix_multiplier(m, dim, &rules.line)
        }
        OperatorSpec::Volterra { gprime, a, lambda } => {
            volterra_matrix(gprime, a.c64(), lambda.c64(), dim)
        }
        OperatorSpec::ToeplitzType { symbol, j } => {
            toeplitz_type_matrix(symbol, *j as usize, dim, &rules.planar)
        }
        OperatorSpec::Hausdorff { rho } => hausdorff_matrix(rho, dim),
        OperatorSpec::Shift { k } => Ok(shift_a_k_matrix(*k as usize, dim)),
        OperatorSpec::Parity => Ok(parity_matrix(dim)),
    }
}

fn symbol_label(symbol: &SymbolSpec) -> String {
    match symbol {
        SymbolSpec::RadialProfile { .. } => "radial".into(),
        SymbolSpec::Angular { power } => format!("angular^{power}"),
        SymbolSpec::PlaneWave { z0 } => format!("plane-wave(({}, {}i))", z0.re, z0.im),
        SymbolSpec::VerticalFromLine { .. } => "vertical".into(),
        SymbolSpec::GaussianRadial { c } => format!("gaussian-radial(c={c})"),
        SymbolSpec::GridSamples { points, .. } => format!("grid({} samples)", points.len()),
        SymbolSpec::Line { .. } => "line".into(),
        SymbolSpec::ExpQuadratic { .. } => "exp-quadratic".into(),
    }
}
