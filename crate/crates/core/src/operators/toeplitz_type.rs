//! Toeplitz-type operators `T_f^{(j)} = (1/pi) f * (e_j otimes e_j)`.
//!
//! Matrix elements are quantum-harmonic-analysis convolutions:
//!
//! ```text
//! <T_f^{(j)} e_n, e_m> = (1/pi) int f(z) <e_n, W_z e_j> <W_z e_j, e_m> dA(z).
//! ```
//!
//! The two Weyl coefficients each carry a factor `e^{-|z|^2/2}`; their
//! product supplies exactly the Gaussian density that converts the Lebesgue
//! integral `(1/pi) dA` into the probabilistic measure the planar rule is
//! built for. Pairing the rule's plain weights with the *scaled* Weyl
//! coefficients therefore keeps every factor polynomially bounded.

use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::operators::weyl::weyl_scaled_basis_coeffs;
use crate::operators::{Provenance, TruncatedOperator};
use crate::quad::QuadratureRule;
use crate::spec::OperatorSpec;
use crate::symbols::SymbolSpec;

/// The truncated Toeplitz-type operator `T_f^{(j)}` of window level `j`.
pub fn toeplitz_type_matrix(
    f: &SymbolSpec,
    j: usize,
    dim: usize,
    rule: &QuadratureRule,
) -> Result<TruncatedOperator> {
    let planar = rule.as_planar()?;
    if j >= dim {
        return Err(FockError::InvalidParameter(format!(
            "window level j = {j} must stay below the truncation dim = {dim}"
        )));
    }
    if f.sup_abs().is_none() {
        return Err(FockError::UnboundedSymbol(format!(
            "no sup bound available for {f:?}; Toeplitz-type construction needs a bounded symbol"
        )));
    }
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for (idx, &z) in planar.points.iter().enumerate() {
        let c = planar.weights[idx] * f.eval(z);
        if c == Complex64::ZERO {
            continue;
        }
        let coeffs = weyl_scaled_basis_coeffs(z, j, dim);
        for m in 0..dim {
            let cm = c * coeffs[m];
            if cm == Complex64::ZERO {
                continue;
            }
            let row = &mut entries[m * dim..(m + 1) * dim];
            for (slot, w) in row.iter_mut().zip(&coeffs) {
                *slot += cm * w.conj();
            }
        }
    }
    TruncatedOperator::new(
        dim,
        entries,
        Provenance::Spec(OperatorSpec::ToeplitzType { symbol: f.clone(), j: j as u32 }),
    )
}
