//! Volterra-type operators
//! `V_{(g,phi)} f(z) = int_0^z f(phi(w)) g'(w) dw` with affine
//! `phi(w) = a + lambda w`.
//!
//! Columns are exact series: the integrand `(a + lambda w)^n g'(w) / sqrt(n!)`
//! is a convolution of a binomial polynomial with the monomial series of
//! `g'`, and the path integral from 0 is a term-by-term antiderivative. As
//! with the other series constructors, the degree cut at `dim - 1` is the
//! only approximation and its mass is estimated on a doubled window.

use num_complex::Complex64;

use crate::basis::ln_factorial;
use crate::error::Result;
use crate::operators::wco::{affine_power_coeffs, check_lambda};
use crate::operators::{Provenance, TruncatedOperator};
use crate::spec::OperatorSpec;
use crate::symbols::AnalyticSpec;

/// The truncated Volterra-type operator `V_{(g,phi)}` described by `g'`.
pub fn volterra_matrix(
    gprime: &AnalyticSpec,
    a: Complex64,
    lambda: Complex64,
    dim: usize,
) -> Result<TruncatedOperator> {
    check_lambda(lambda)?;
    let window = 2 * dim;
    let gp = gprime.monomial_coeffs(window);
    let mut entries = vec![Complex64::ZERO; dim * dim];
    let mut worst_tail = 0.0f64;
    for n in 0..dim {
        let affine = affine_power_coeffs(a, lambda, n);
        let mut tail_sq = 0.0f64;
        // Column n holds the coefficients of
        //   int_0^z (a + lambda w)^n g'(w) dw / sqrt(n!),
        // whose degree-m monomial coefficient is r_{m-1} / m with r the
        // integrand's coefficient sequence.
        for m in 1..=window {
            let k = m - 1;
            let mut r = Complex64::ZERO;
            for (i, &b) in affine.iter().enumerate().take(k + 1) {
                r += b * gp[k - i];
            }
            if r == Complex64::ZERO {
                continue;
            }
            let value =
                r / m as f64 * (0.5 * (ln_factorial(m) - ln_factorial(n))).exp();
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
        Provenance::Spec(OperatorSpec::Volterra {
            gprime: gprime.clone(),
            a: a.into(),
            lambda: lambda.into(),
        }),
    )?
    .with_tail_bound(worst_tail))
}

/// `V_z`: integration against `g(z) = z`, i.e. `g' = 1`, `phi = id`.
pub fn v_z_matrix(dim: usize) -> Result<TruncatedOperator> {
    volterra_matrix(
        &AnalyticSpec::Polynomial { coeffs: vec![Complex64::ONE.into()] },
        Complex64::ZERO,
        Complex64::ONE,
        dim,
    )
}

/// `V_{z^2/2}`: integration against `g(z) = z^2/2`, i.e. `g'(w) = w`,
/// `phi = id`. Its entries are `sqrt((n+1)/(n+2))` at `(n+2, n)`.
pub fn v_z2_half_matrix(dim: usize) -> Result<TruncatedOperator> {
    volterra_matrix(
        &AnalyticSpec::Polynomial {
            coeffs: vec![Complex64::ZERO.into(), Complex64::ONE.into()],
        },
        Complex64::ZERO,
        Complex64::ONE,
        dim,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{adjoint, max_entry_distance, shift_a_k_matrix};
    use approx::assert_relative_eq;

    #[test]
    fn v_z2_half_raises_by_two_with_exact_weights() {
        let v = v_z2_half_matrix(24).unwrap();
        for n in 0..24 {
            for m in 0..24 {
                if m == n + 2 {
                    let want = ((n as f64 + 1.0) / (n as f64 + 2.0)).sqrt();
                    assert_relative_eq!(v.entry(m, n).re, want, max_relative = 1e-14);
                    assert_eq!(v.entry(m, n).im, 0.0);
                } else {
                    assert_eq!(v.entry(m, n), Complex64::ZERO);
                }
            }
        }
    }

    #[test]
    fn v_z_is_the_one_step_raising_operator() {
        let v = v_z_matrix(20).unwrap();
        let a1 = shift_a_k_matrix(1, 20);
        assert!(max_entry_distance(&v, &a1).unwrap() <= 1e-15);
    }

    #[test]
    fn adjoint_of_v_z2_half_lowers_by_two() {
        let t = adjoint(&v_z2_half_matrix(16).unwrap());
        for n in 2..16 {
            let want = ((n as f64 - 1.0) / n as f64).sqrt();
            assert_relative_eq!(t.entry(n - 2, n).re, want, max_relative = 1e-14);
        }
        for n in 0..2 {
            for m in 0..16 {
                assert_eq!(t.entry(m, n), Complex64::ZERO);
            }
        }
    }

    #[test]
    fn zero_integrand_gives_zero_matrix() {
        let v = volterra_matrix(
            &AnalyticSpec::Polynomial { coeffs: vec![] },
            Complex64::new(0.3, 0.0),
            Complex64::new(0.5, 0.5),
            10,
        )
        .unwrap();
        assert_eq!(v.max_abs_entry(), 0.0);
        assert_eq!(v.tail_bound, Some(0.0));
    }

    #[test]
    fn expanding_maps_are_rejected() {
        assert!(volterra_matrix(
            &AnalyticSpec::Polynomial { coeffs: vec![Complex64::ONE.into()] },
            Complex64::ZERO,
            Complex64::new(0.9, 0.9),
            8,
        )
        .is_err());
    }
}
