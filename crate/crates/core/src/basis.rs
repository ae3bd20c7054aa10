//! Orthonormal basis and reproducing kernel of the Fock space, plus the
//! classical special functions (Laguerre polynomials, Hermite functions)
//! used by the operator constructors.
//!
//! The monomials `e_n(z) = z^n / sqrt(n!)` form an orthonormal basis of
//! `F^2`. The reproducing kernel is `K_z(w) = e^{w conj(z)}` with
//! `||K_z|| = e^{|z|^2/2}`, and `k_z = K_z / ||K_z||` denotes the
//! normalized kernel.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Largest index for which `ln(n!)` is read from the precomputed table.
const LN_FACTORIAL_TABLE_LEN: usize = 4096;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LN_FACTORIAL_TABLE_LEN);
        table.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..LN_FACTORIAL_TABLE_LEN {
            acc += (k as f64).ln();
            table.push(acc);
        }
        table
    })
}

/// Natural logarithm of `n!`, exact-to-roundoff for tabulated `n` and via the
/// Stirling series beyond the table.
pub fn ln_factorial(n: usize) -> f64 {
    let table = ln_factorial_table();
    if n < table.len() {
        return table[n];
    }
    // Stirling series with three correction terms; relative error below
    // 1e-16 for the table sizes involved here.
    let x = (n + 1) as f64;
    let inv = 1.0 / x;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv * inv * (1.0 / 360.0 - inv * inv / 1260.0))
}

/// Evaluates the orthonormal monomial `e_n(z) = z^n / sqrt(n!)`.
///
/// The magnitude is assembled in log form, `exp(n ln|z| - ln(n!) / 2)`, so
/// the evaluation stays accurate for large `n` (beyond `n = 170` where `n!`
/// itself overflows) and only overflows when the true value does.
pub fn monomial_basis_eval(n: usize, z: Complex64) -> Complex64 {
    if z == Complex64::ZERO {
        return if n == 0 { Complex64::ONE } else { Complex64::ZERO };
    }
    let ln_mag = n as f64 * z.norm().ln() - 0.5 * ln_factorial(n);
    let phase = n as f64 * z.arg();
    Complex64::from_polar(ln_mag.exp(), phase)
}

/// Fills `out` with `e_0(z), ..., e_{len-1}(z)` by the stable recurrence
/// `e_{n+1}(z) = e_n(z) z / sqrt(n+1)`.
pub fn basis_vector_into(z: Complex64, out: &mut [Complex64]) {
    if out.is_empty() {
        return;
    }
    out[0] = Complex64::ONE;
    for n in 1..out.len() {
        out[n] = out[n - 1] * z / (n as f64).sqrt();
    }
}

/// Returns `[e_0(z), ..., e_{n-1}(z)]`.
pub fn basis_vector(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; n];
    basis_vector_into(z, &mut out);
    out
}

/// Reproducing kernel `K_z(w) = e^{w conj(z)}`.
pub fn kernel_eval(z: Complex64, w: Complex64) -> Complex64 {
    (w * z.conj()).exp()
}

/// Basis coefficients of the normalized reproducing kernel `k_z`:
/// `c_n = e^{-|z|^2/2} conj(z)^n / sqrt(n!)` for `n < len`.
///
/// The coefficient vector satisfies `sum |c_n|^2 -> 1` as `len` grows; the
/// missing mass is the Poisson tail `P(X >= len)` for `X ~ Poisson(|z|^2)`,
/// which is what the reliability radius `|z| <= sqrt(len)/2` keeps small.
pub fn normalized_kernel_coeffs(z: Complex64, len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; len];
    if len == 0 {
        return out;
    }
    out[0] = Complex64::new((-0.5 * z.norm_sqr()).exp(), 0.0);
    let zc = z.conj();
    for n in 1..len {
        out[n] = out[n - 1] * zc / (n as f64).sqrt();
    }
    out
}

/// Laguerre polynomial `L_j(x) = sum_{k=0}^{j} C(j,k) (-1)^k x^k / k!`.
///
/// The binomial factors are accumulated multiplicatively; for the moderate
/// degrees used here (`j <= 32`) the explicit sum is well conditioned on
/// `x >= 0`.
pub fn laguerre_poly(j: usize, x: f64) -> f64 {
    let mut sum = 1.0f64;
    let mut term = 1.0f64; // C(j,k) (-1)^k x^k / k! at k = 0
    for k in 0..j {
        // term_{k+1} / term_k = -(j - k) x / (k + 1)^2
        term *= -((j - k) as f64) * x / ((k + 1) as f64 * (k + 1) as f64);
        sum += term;
    }
    sum
}

/// Hermite function `h_n(x) = (2/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt(2) x)
/// e^{-x^2}`, normalized in `L^2(R)` so that its Bargmann transform is the
/// monomial basis vector `e_n`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    hermite_function_vec(n, x)[n]
}

/// Evaluates `h_0(x), ..., h_n(x)` in one pass of the normalized three-term
/// recurrence. Each value carries its own Gaussian factor, so no
/// intermediate overflows occur even for large `n` or `|x|`.
pub fn hermite_function_vec(n: usize, x: f64) -> Vec<f64> {
    // h_n(x) = 2^{1/4} psi_n(sqrt(2) x) with psi_n the standard normalized
    // Hermite functions: psi_0(u) = pi^{-1/4} e^{-u^2/2},
    // psi_{k+1}(u) = u sqrt(2/(k+1)) psi_k(u) - sqrt(k/(k+1)) psi_{k-1}(u).
    let u = std::f64::consts::SQRT_2 * x;
    let mut out = Vec::with_capacity(n + 1);
    let scale = 2.0f64.powf(0.25);
    let psi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * u * u).exp();
    out.push(scale * psi0);
    if n == 0 {
        return out;
    }
    let mut prev = psi0;
    let mut cur = u * std::f64::consts::SQRT_2 * psi0;
    out.push(scale * cur);
    for k in 1..n {
        let next = u * (2.0 / (k as f64 + 1.0)).sqrt() * cur
            - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(scale * cur);
    }
    out
}
