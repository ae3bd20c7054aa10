//! Weyl operators `W_z f(w) = k_z(w) f(w - z)`.
//!
//! The action on a basis vector expands in closed form:
//!
//! ```text
//! W_z e_n(w) = e^{-|z|^2/2} e^{w zbar} (w - z)^n / sqrt(n!)
//!            = sum_m gamma_m(z, n) w^m,
//! gamma_m = e^{-|z|^2/2} / sqrt(n!) *
//!           sum_{i <= min(n,m)} C(n,i) (-z)^{n-i} zbar^{m-i} / (m-i)!,
//! ```
//!
//! so `<W_z e_n, e_m> = gamma_m sqrt(m!)`. All entries are finite sums; no
//! quadrature is involved. Since `W_z` is unitary, every column of the exact
//! operator has unit norm, which gives an *exact* expression for the mass a
//! truncation discards.

use crate::basis::ln_factorial;
use crate::error::Result;
use crate::operators::{Provenance, TruncatedOperator};
use crate::spec::OperatorSpec;
use num_complex::Complex64;

/// Column `n` of the Weyl matrix, i.e. the coefficients of `W_z e_n` against
/// `{e_m}` for `m < dim`. With `scaled`, the factor `e^{-|z|^2/2}` is
/// omitted, which keeps every quantity polynomially sized for large `|z|`.
fn weyl_column(z: Complex64, n: usize, dim: usize, scaled: bool) -> Vec<Complex64> {
    let neg_z = -z;
    let zbar = z.conj();
    let max_pow = dim.max(n + 1);
    let mut negz_pow = Vec::with_capacity(n + 1);
    let mut zbar_pow = Vec::with_capacity(max_pow);
    let mut p = Complex64::ONE;
    for _ in 0..=n {
        negz_pow.push(p);
        p *= neg_z;
    }
    p = Complex64::ONE;
    for _ in 0..max_pow {
        zbar_pow.push(p);
        p *= zbar;
    }
    let gauss = if scaled { 0.0 } else { -0.5 * z.norm_sqr() };

    let mut out = Vec::with_capacity(dim);
    for m in 0..dim {
        let mut sum = Complex64::ZERO;
        // C(n, i) built incrementally.
        let mut binom = 1.0f64;
        for i in 0..=n.min(m) {
            if i > 0 {
                binom *= (n - i + 1) as f64 / i as f64;
            }
            let inv_fact = (-ln_factorial(m - i)).exp();
            sum += binom * inv_fact * negz_pow[n - i] * zbar_pow[m - i];
        }
        let prefactor = (0.5 * (ln_factorial(m) - ln_factorial(n)) + gauss).exp();
        out.push(sum * prefactor);
    }
    out
}

/// The truncated Weyl operator at `z`.
pub fn weyl_matrix(z: Complex64, dim: usize) -> Result<TruncatedOperator> {
    let mut entries = vec![Complex64::ZERO; dim * dim];
    let mut worst_tail = 0.0f64;
    for n in 0..dim {
        let col = weyl_column(z, n, dim, false);
        let mut mass = 0.0;
        for (m, &value) in col.iter().enumerate() {
            entries[m * dim + n] = value;
            mass += value.norm_sqr();
        }
        // Unitarity: the full column has norm exactly 1.
        worst_tail = worst_tail.max((1.0 - mass).max(0.0).sqrt());
    }
    Ok(TruncatedOperator::new(
        dim,
        entries,
        Provenance::Spec(OperatorSpec::Weyl { z: z.into() }),
    )?
    .with_tail_bound(worst_tail))
}

/// Basis coefficients of the *scaled* Weyl action `e^{+|z|^2/2} W_z e_j`,
/// truncated to `dim` coefficients.
///
/// These coefficients grow only polynomially in `|z|`, so they can be paired
/// with Gaussian quadrature weights at arbitrarily large nodes without either
/// factor overflowing; the product reconstitutes `W_z` exactly.
pub fn weyl_scaled_basis_coeffs(z: Complex64, j: usize, dim: usize) -> Vec<Complex64> {
    weyl_column(z, j, dim, true)
}
