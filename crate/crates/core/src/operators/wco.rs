//! Weighted composition operators `W_{psi,phi} f = psi * (f o phi)` with an
//! affine inducing map `phi(w) = a + lambda w`.
//!
//! The matrix is assembled columnwise from exact series arithmetic:
//! `W_{psi,phi} e_n(z) = psi(z) (a + lambda z)^n / sqrt(n!)`, the product of
//! a binomial polynomial with the monomial series of `psi`. No quadrature is
//! involved; the only truncation is the cut at degree `dim - 1`, whose
//! discarded mass is estimated on a doubled-degree window and reported via
//! `tail_bound`.

use num_complex::Complex64;

use crate::basis::ln_factorial;
use crate::error::{FockError, Result};
use crate::operators::{Provenance, TruncatedOperator};
use crate::spec::OperatorSpec;
use crate::symbols::{AnalyticSpec, SymbolSpec};

/// Inducing maps with `|lambda| > 1` leave `F^2` (no bounded operator
/// exists), so every affine-composition constructor rejects them.
pub(crate) fn check_lambda(lambda: Complex64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(FockError::NonFinite("lambda".into()));
    }
    if lambda.norm() > 1.0 + 1e-12 {
        return Err(FockError::LambdaOutOfRange(lambda.norm()));
    }
    Ok(())
}

/// Monomial coefficients of `(a + lambda z)^n`.
pub(crate) fn affine_power_coeffs(a: Complex64, lambda: Complex64, n: usize) -> Vec<Complex64> {
    // Binomial row by Pascal addition: exact in f64 for every C(n, k) below
    // 2^53 (all n <= 55, far past the truncations used here), so degenerate
    // maps like the identity reproduce their matrices without roundoff.
    let mut binom = vec![0.0f64; n + 1];
    binom[0] = 1.0;
    for row in 1..=n {
        for i in (1..=row).rev() {
            binom[i] += binom[i - 1];
        }
    }
    (0..=n)
        .map(|i| binom[i] * a.powu((n - i) as u32) * lambda.powu(i as u32))
        .collect()
}

/// The truncated weighted composition operator `W_{psi,phi}` with
/// `phi(w) = a + lambda w`.
pub fn weighted_composition_matrix(
    psi: &AnalyticSpec,
    a: Complex64,
    lambda: Complex64,
    dim: usize,
) -> Result<TruncatedOperator> {
    check_lambda(lambda)?;
    let window = 2 * dim;
    let psi_coeffs = psi.monomial_coeffs(window);
    let mut entries = vec![Complex64::ZERO; dim * dim];
    let mut worst_tail = 0.0f64;
    for n in 0..dim {
        let affine = affine_power_coeffs(a, lambda, n);
        let mut tail_sq = 0.0f64;
        for m in 0..window {
            let mut q = Complex64::ZERO;
            for (i, &b) in affine.iter().enumerate().take(m + 1) {
                q += b * psi_coeffs[m - i];
            }
            if q == Complex64::ZERO {
                continue;
            }
            let value = q * (0.5 * (ln_factorial(m) - ln_factorial(n))).exp();
            if m < dim {
                entries[m * dim + n] = value;
            } else {
                tail_sq += value.norm_sqr();
            }
        }
        worst_tail = worst_tail.max(tail_sq.sqrt());
    }
    Ok(TruncatedOperator::new(
        dim,
        entries,
        Provenance::Spec(OperatorSpec::WeightedComposition {
            psi: psi.clone(),
            a: a.into(),
            lambda: lambda.into(),
        }),
    )?
    .with_tail_bound(worst_tail))
}

/// The Berezin transform of `W_{psi,phi}` in closed form,
/// `e^{(lambda - 1)|z|^2 + a conj(z)} psi(z)`, packaged as an evaluable
/// symbol.
pub fn wco_berezin_symbol(psi: &AnalyticSpec, a: Complex64, lambda: Complex64) -> SymbolSpec {
    SymbolSpec::ExpQuadratic {
        scale: Complex64::ONE.into(),
        sq: (lambda - Complex64::ONE).into(),
        lin: a.into(),
        factor: psi.clone(),
        arg_scale: Complex64::ONE.into(),
        arg_shift: Complex64::ZERO.into(),
    }
}
