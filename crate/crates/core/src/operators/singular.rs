//! Singular integral operators `S_phi` with vertical-translation symmetry.
//!
//! `S_phi` acts through the kernel `phi(z - conj(w)) e^{z conj(w)}`, where
//! `phi` is tied to a bounded multiplier `m` on the line by
//!
//! ```text
//! phi(z) = (2/pi)^{1/2} int m(x) e^{-2(x - iz/2)^2} dx
//!        = e^{z^2/2} (2/pi)^{1/2} int m(x) e^{-2x^2} e^{2ixz} dx.
//! ```
//!
//! Two independent constructors are provided and cross-validated in tests:
//!
//! * [`singular_integral_matrix_direct`] evaluates the defining double
//!   integral `<S_phi e_n, e_m> = ∫∫ conj(e_m(z)) e^{z conj(w)}
//!   phi(z - conj(w)) e_n(w) dmu(w) dmu(z)` with the planar rule in both
//!   variables. The multiplier integral inside `phi` is interleaved with the
//!   two planar quadratures (Fubini), which keeps every factor
//!   Gaussian-damped: for fixed `x` the kernel splits as
//!   `e^{2ixz + z^2/2} * e^{-2ix conj(w) + conj(w)^2/2}`, so each planar
//!   quadrature sees an entire integrand and the otherwise catastrophic
//!   `e^{Re^2/2}` growth of `phi` on the diagonal never materializes.
//! * [`singular_integral_matrix_multiplier`] follows the unitary
//!   factorization `S_phi = B F^{-1} M_m F B^*`: the Bargmann preimages of
//!   the basis are scaled Hermite functions, their Fourier transforms are
//!   computed *numerically* on the Gauss-Hermite grid, and the multiplier is
//!   applied by line quadrature.

use num_complex::Complex64;

use crate::basis::hermite_function_vec;
use crate::error::{FockError, Result};
use crate::operators::{Provenance, TruncatedOperator};
use crate::quad::QuadratureRule;
use crate::spec::OperatorSpec;
use crate::symbols::LineProfile;
use crate::types::Flagged;

/// Largest `|Im z|` at which [`phi_from_multiplier`] is trusted with the
/// default 200-node line rule: beyond it the recentered Gaussian mass starts
/// to leave the node range and results are flagged.
pub const PHI_SAFE_IM_RADIUS: f64 = 8.0;

/// Evaluates `phi(z) = (2/pi)^{1/2} int m(x) e^{-2(x - iz/2)^2} dx` by
/// Gauss-Hermite quadrature on the line rule (after `u = sqrt(2) x`).
///
/// The result is flagged unreliable when `|Im z|` exceeds
/// [`PHI_SAFE_IM_RADIUS`], where the quadrature starts to diverge from the
/// contour integral.
pub fn phi_from_multiplier(
    m: &LineProfile,
    z: Complex64,
    rule: &QuadratureRule,
) -> Result<Flagged<Complex64>> {
    let line = rule.as_line()?;
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut acc = Complex64::ZERO;
    for (k, &u) in line.nodes.iter().enumerate() {
        let x = u * half;
        let weight = line.weights[k] * m.eval(x);
        if weight == 0.0 {
            continue;
        }
        acc += weight * (Complex64::new(0.0, 2.0 * x) * z).exp();
    }
    let value = acc * (0.5 * z * z).exp() / std::f64::consts::PI.sqrt();
    if !value.is_finite() {
        return Err(FockError::NonFinite(format!("phi({z}) overflowed")));
    }
    Ok(Flagged { value, reliable: z.im.abs() <= PHI_SAFE_IM_RADIUS })
}

/// `<S_phi e_n, e_m>` by double planar quadrature of the defining kernel
/// integral, with `phi` expanded through its multiplier integral (see the
/// module docs for why the three quadratures are interleaved).
///
/// `planar` integrates both complex variables; `line` carries the multiplier
/// integral defining `phi`.
pub fn singular_integral_matrix_direct(
    m: &LineProfile,
    dim: usize,
    planar_rule: &QuadratureRule,
    line_rule: &QuadratureRule,
) -> Result<TruncatedOperator> {
    m.validate()?;
    let planar = planar_rule.as_planar()?;
    let line = line_rule.as_line()?;
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();

    // Normalized monomials at every planar node, reused across line nodes.
    let mut basis = vec![Complex64::ZERO; planar.points.len() * dim];
    {
        let mut inv_sqrt_fact = vec![0.0f64; dim];
        for (n, slot) in inv_sqrt_fact.iter_mut().enumerate() {
            *slot = (-0.5 * crate::basis::ln_factorial(n)).exp();
        }
        for (i, &z) in planar.points.iter().enumerate() {
            let mut pow = Complex64::ONE;
            for n in 0..dim {
                basis[i * dim + n] = pow * inv_sqrt_fact[n];
                pow *= z;
            }
        }
    }

    let mut entries = vec![Complex64::ZERO; dim * dim];
    let mut profile = vec![Complex64::ZERO; dim];
    for (k, &u) in line.nodes.iter().enumerate() {
        let x = u * half;
        let c = line.weights[k] * m.eval(x) * inv_sqrt_pi;
        if c == 0.0 {
            continue;
        }
        // profile[n] = planar quadrature of conj(e_n(z)) e^{2ixz + z^2/2}.
        profile.iter_mut().for_each(|p| *p = Complex64::ZERO);
        for (i, &z) in planar.points.iter().enumerate() {
            let factor =
                planar.weights[i] * (Complex64::new(0.0, 2.0 * x) * z + 0.5 * z * z).exp();
            if factor == Complex64::ZERO {
                continue;
            }
            for (p, b) in profile.iter_mut().zip(&basis[i * dim..(i + 1) * dim]) {
                *p += factor * b.conj();
            }
        }
        for mm in 0..dim {
            let cm = c * profile[mm];
            let row = &mut entries[mm * dim..(mm + 1) * dim];
            for (slot, q) in row.iter_mut().zip(&profile) {
                *slot += cm * q.conj();
            }
        }
    }
    TruncatedOperator::new(
        dim,
        entries,
        Provenance::Spec(OperatorSpec::SingularIntegral { m: m.clone() }),
    )
}

/// `<S_phi e_n, e_m>` through the factorization `S_phi = B F^{-1} M_m F B^*`.
///
/// The Bargmann preimage of `e_n` is the scaled Hermite function
/// `h_n(y) = 2^{1/4} psi_n(sqrt(2) y)`; its Fourier transform under the
/// convention `F f(x) = pi^{-1/2} int e^{-2ixy} f(y) dy` is evaluated by
/// quadrature on the shared Gauss-Hermite grid, and the multiplier `m` is
/// applied by a second pass over the same grid. A Parseval check guards the
/// grid resolution: each transformed basis function must keep unit norm, or
/// the constructor reports [`FockError::QuadratureResolution`].
pub fn singular_integral_matrix_multiplier(
    m: &LineProfile,
    dim: usize,
    line_rule: &QuadratureRule,
) -> Result<TruncatedOperator> {
    m.validate()?;
    if dim == 0 {
        return TruncatedOperator::new(
            0,
            Vec::new(),
            Provenance::Spec(OperatorSpec::SingularIntegral { m: m.clone() }),
        );
    }
    let line = line_rule.as_line()?;
    let count = line.nodes.len();
    let half = std::f64::consts::FRAC_1_SQRT_2;

    // h_n at the substituted nodes y_k = u_k / sqrt(2).
    let mut h = vec![0.0f64; dim * count];
    for (k, &u) in line.nodes.iter().enumerate() {
        let hv = hermite_function_vec(dim - 1, u * half);
        for n in 0..dim {
            h[n * count + k] = hv[n];
        }
    }

    // Numeric Fourier transform on the same grid:
    // v_n(p) = pi^{-1/2} 2^{-1/2} sum_k scaled_w_k h_n(y_k) e^{-i u_p u_k}.
    let prefactor = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut v = vec![Complex64::ZERO; dim * count];
    for p in 0..count {
        let up = line.nodes[p];
        for (k, &uk) in line.nodes.iter().enumerate() {
            let phase = Complex64::new(0.0, -up * uk).exp() * line.scaled_weights[k];
            for n in 0..dim {
                v[n * count + p] += prefactor * phase * h[n * count + k];
            }
        }
    }

    // Parseval guard: int |F h_n|^2 dx = 1.
    for n in 0..dim {
        let mut norm = 0.0;
        for p in 0..count {
            norm += line.scaled_weights[p] * v[n * count + p].norm_sqr();
        }
        norm *= half;
        if (norm - 1.0).abs() > 1e-6 {
            return Err(FockError::QuadratureResolution(format!(
                "Fourier-transformed basis function {n} has norm^2 = {norm}, expected 1"
            )));
        }
    }

    // entries[mm][n] = int m(x) v_n(x) conj(v_mm(x)) dx.
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for p in 0..count {
        let c = half * line.scaled_weights[p] * m.eval(line.nodes[p] * half);
        if c == 0.0 {
            continue;
        }
        for mm in 0..dim {
            let cm = c * v[mm * count + p].conj();
            let row = &mut entries[mm * dim..(mm + 1) * dim];
            for (n, slot) in row.iter_mut().enumerate() {
                *slot += cm * v[n * count + p];
            }
        }
    }
    TruncatedOperator::new(
        dim,
        entries,
        Provenance::Spec(OperatorSpec::SingularIntegral { m: m.clone() }),
    )
}
