//! Hausdorff operators `H_rho f(z) = int f(z/t) (1/t) drho(t)` for measures
//! on `[1, oo)`.
//!
//! On the monomial basis the operator acts diagonally with the moments
//! `a_n = int t^{-(n+1)} drho(t)` as eigenvalues; atoms contribute exactly
//! and density parts in closed form per log-grid segment (see
//! [`MeasureSpec::moment`]).

use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::operators::{Provenance, TruncatedOperator};
use crate::spec::OperatorSpec;
use crate::symbols::{GaussianTerm, MeasureSpec, RadialProfile, SymbolSpec};

/// The truncated Hausdorff operator of the measure `rho`.
pub fn hausdorff_matrix(rho: &MeasureSpec, dim: usize) -> Result<TruncatedOperator> {
    rho.validate()?;
    let diag: Vec<Complex64> = (0..dim).map(|n| rho.moment(n)).collect();
    Ok(TruncatedOperator::from_diagonal(
        &diag,
        Provenance::Spec(OperatorSpec::Hausdorff { rho: rho.clone() }),
    ))
}

/// The radial Toeplitz symbol matching `H_rho` for purely atomic `rho` with
/// real weights: `f(z) = sum_i c_i e^{-(x_i - 1)|z|^2}`, from the identity
/// `H_{delta_x} = T_{f_x}`. The continuous and complex-weight cases have no
/// such closed form and are rejected.
pub fn hausdorff_toeplitz_symbol(rho: &MeasureSpec) -> Result<SymbolSpec> {
    rho.validate()?;
    if rho.density.is_some() {
        return Err(FockError::Unsupported(
            "Toeplitz symbol recovery is defined for purely atomic measures".into(),
        ));
    }
    let mut terms = Vec::with_capacity(rho.atoms.len());
    for atom in &rho.atoms {
        let weight: Complex64 = atom.weight.into();
        if weight.im != 0.0 {
            return Err(FockError::Unsupported(
                "Toeplitz symbol recovery needs real atom weights".into(),
            ));
        }
        terms.push(GaussianTerm { amp: weight.re, c: atom.location - 1.0 });
    }
    Ok(SymbolSpec::RadialProfile { g: RadialProfile::GaussianMix { terms } })
}
