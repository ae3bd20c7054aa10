//! Gaussian quadrature rules for the measure family of the Fock space.
//!
//! Four rule kinds are provided:
//!
//! * [`RuleKind::RadialLaguerre`] — Gauss-Laguerre nodes/weights for
//!   `int_0^oo f(s) e^{-s} ds`, where `s = |z|^2` is the squared radius.
//! * [`RuleKind::AngularUniform`] — the uniform rule on `[0, 2pi)`, exact for
//!   trigonometric polynomials of angular frequency below the node count.
//! * [`RuleKind::LineHermite`] — Gauss-Hermite nodes/weights for
//!   `int_R f(x) e^{-x^2} dx`.
//! * [`RuleKind::PlanarPolar`] — the tensor product of the first two, which
//!   integrates `int_C F dmu` for the Gaussian measure
//!   `dmu(z) = pi^{-1} e^{-|z|^2} dA(z)`.
//!
//! Nodes are initialized from the eigenvalues of the Jacobi matrix and
//! polished with Newton steps on the scaled orthonormal recurrences (the
//! polynomials premultiplied by the square root of the weight function), so
//! both nodes and Christoffel weights retain full relative accuracy out to
//! the extreme nodes of large rules. Every rule also carries *scaled*
//! weights, `w_i e^{s_i}` (resp. `w_i e^{x_i^2}`), which are the natural
//! weights for integrands that already contain their Gaussian damping; they
//! are O(node spacing) numbers and never overflow.

use crate::basis::basis_vector_into;
use crate::error::{FockError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The supported quadrature rule kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleKind {
    RadialLaguerre,
    AngularUniform,
    LineHermite,
    PlanarPolar,
}

/// Gauss-Laguerre rule in the squared-radius variable `s = |z|^2`:
/// `int_0^oo f(s) e^{-s} ds ~ sum_i weights[i] f(nodes[i])`.
#[derive(Clone, Debug)]
pub struct RadialRule {
    pub nodes: Vec<f64>,
    /// Plain weights (Gaussian factor absorbed).
    pub weights: Vec<f64>,
    /// `weights[i] * e^{nodes[i]}`; use with integrands carrying `e^{-s}`.
    pub scaled_weights: Vec<f64>,
}

/// Uniform angular rule: nodes `theta_j = 2 pi j / n`, common weight `2 pi / n`.
#[derive(Clone, Debug)]
pub struct AngularRule {
    pub nodes: Vec<f64>,
    pub weight: f64,
}

/// Gauss-Hermite rule: `int_R f(x) e^{-x^2} dx ~ sum_i weights[i] f(nodes[i])`.
#[derive(Clone, Debug)]
pub struct LineRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `weights[i] * e^{nodes[i]^2}`; use with integrands carrying `e^{-x^2}`.
    pub scaled_weights: Vec<f64>,
}

/// Tensor-product rule on the plane for `int_C F dmu`.
///
/// Points are stored radial-major: index `i * n_angular + j` holds
/// `sqrt(s_i) e^{i theta_j}`.
#[derive(Clone, Debug)]
pub struct PlanarRule {
    pub n_radial: usize,
    pub n_angular: usize,
    pub points: Vec<Complex64>,
    /// Squared radius `s_i` of each point.
    pub sq_abs: Vec<f64>,
    /// Weights for `int_C F dmu ~ sum w_i F(z_i)`.
    pub weights: Vec<f64>,
    /// Weights for `pi^{-1} int_C G dA ~ sum w_i e^{s_i} G(z_i)`; meant for
    /// integrands `G` that decay at least like `e^{-|z|^2}`.
    pub scaled_weights: Vec<f64>,
}

/// A quadrature rule of any supported kind.
#[derive(Clone, Debug)]
pub enum QuadratureRule {
    Radial(RadialRule),
    Angular(AngularRule),
    Line(LineRule),
    Planar(PlanarRule),
}

impl QuadratureRule {
    pub fn kind(&self) -> RuleKind {
        match self {
            QuadratureRule::Radial(_) => RuleKind::RadialLaguerre,
            QuadratureRule::Angular(_) => RuleKind::AngularUniform,
            QuadratureRule::Line(_) => RuleKind::LineHermite,
            QuadratureRule::Planar(_) => RuleKind::PlanarPolar,
        }
    }

    pub fn as_radial(&self) -> Result<&RadialRule> {
        match self {
            QuadratureRule::Radial(r) => Ok(r),
            other => Err(FockError::RuleKindMismatch {
                expected: RuleKind::RadialLaguerre,
                got: other.kind(),
            }),
        }
    }

    pub fn as_angular(&self) -> Result<&AngularRule> {
        match self {
            QuadratureRule::Angular(r) => Ok(r),
            other => Err(FockError::RuleKindMismatch {
                expected: RuleKind::AngularUniform,
                got: other.kind(),
            }),
        }
    }

    pub fn as_line(&self) -> Result<&LineRule> {
        match self {
            QuadratureRule::Line(r) => Ok(r),
            other => Err(FockError::RuleKindMismatch {
                expected: RuleKind::LineHermite,
                got: other.kind(),
            }),
        }
    }

    pub fn as_planar(&self) -> Result<&PlanarRule> {
        match self {
            QuadratureRule::Planar(r) => Ok(r),
            other => Err(FockError::RuleKindMismatch {
                expected: RuleKind::PlanarPolar,
                got: other.kind(),
            }),
        }
    }
}

/// Builds a rule of the requested kind. `sizes` carries one entry for the
/// one-dimensional kinds and `[n_radial, n_angular]` for the planar rule.
pub fn make_rule(kind: RuleKind, sizes: &[usize]) -> Result<QuadratureRule> {
    let expect_len = |len: usize| -> Result<()> {
        if sizes.len() != len {
            return Err(FockError::InvalidRuleSize(format!(
                "{kind:?} expects {len} size parameter(s), got {}",
                sizes.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(FockError::InvalidRuleSize(format!(
                "{kind:?} sizes must be positive, got {sizes:?}"
            )));
        }
        Ok(())
    };
    match kind {
        RuleKind::RadialLaguerre => {
            expect_len(1)?;
            Ok(QuadratureRule::Radial(gauss_laguerre(sizes[0])?))
        }
        RuleKind::AngularUniform => {
            expect_len(1)?;
            Ok(QuadratureRule::Angular(angular_uniform(sizes[0])))
        }
        RuleKind::LineHermite => {
            expect_len(1)?;
            Ok(QuadratureRule::Line(gauss_hermite(sizes[0])?))
        }
        RuleKind::PlanarPolar => {
            expect_len(2)?;
            Ok(QuadratureRule::Planar(planar_polar(sizes[0], sizes[1])?))
        }
    }
}

/// Integrates `int_C F dmu` with a planar rule.
pub fn integrate_gaussian<F>(f: F, rule: &QuadratureRule) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let planar = rule.as_planar()?;
    let mut acc = Complex64::ZERO;
    for (&w, &z) in planar.weights.iter().zip(&planar.points) {
        acc += w * f(z);
    }
    Ok(acc)
}

/// Eigenvalues of a symmetric tridiagonal Jacobi matrix, sorted ascending.
fn jacobi_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mat = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j || j + 1 == i {
            offdiag[i.min(j)]
        } else {
            0.0
        }
    });
    let mut eig: Vec<f64> = mat.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Scaled orthonormal Laguerre values `q_k(x) = L_k(x) e^{-x/2}` for
/// `k = 0..=n`, returned as (q_{n-1}, q_n, sum_{k<n} q_k^2).
fn laguerre_scaled_tail(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = (-0.5 * x).exp(); // q_0
    let mut sum_sq = prev * prev;
    if n == 0 {
        return (0.0, prev, 0.0);
    }
    let mut cur = (1.0 - x) * prev; // q_1
    for k in 1..n {
        sum_sq += cur * cur;
        let next = ((2.0 * k as f64 + 1.0 - x) * cur - k as f64 * prev) / (k as f64 + 1.0);
        prev = cur;
        cur = next;
    }
    (prev, cur, sum_sq)
}

/// Gauss-Laguerre rule with `n` nodes. Nodes whose plain weight underflows
/// `f64` (squared radius beyond roughly 709) are dropped; they cannot
/// contribute to any double-precision integral of the supported form.
pub fn gauss_laguerre(n: usize) -> Result<RadialRule> {
    if n == 0 {
        return Err(FockError::InvalidRuleSize("Gauss-Laguerre needs n >= 1".into()));
    }
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let offdiag: Vec<f64> = (1..n).map(|k| k as f64).collect();
    let mut nodes = jacobi_eigenvalues(&diag, &offdiag);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (q_prev, q_n, _) = laguerre_scaled_tail(n, *x);
            // L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x, same ratio for scaled values.
            let deriv = n as f64 * (q_n - q_prev) / *x;
            if deriv == 0.0 {
                break;
            }
            let step = q_n / deriv;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs() {
                break;
            }
        }
    }

    let mut rule = RadialRule {
        nodes: Vec::with_capacity(n),
        weights: Vec::with_capacity(n),
        scaled_weights: Vec::with_capacity(n),
    };
    for &x in &nodes {
        let (_, _, sum_sq) = laguerre_scaled_tail(n, x);
        let scaled = 1.0 / sum_sq;
        let plain = scaled * (-x).exp();
        if plain > 0.0 && plain.is_finite() {
            rule.nodes.push(x);
            rule.weights.push(plain);
            rule.scaled_weights.push(scaled);
        }
    }
    Ok(rule)
}

/// Scaled orthonormal Hermite values `q_k(x) = p_k(x) e^{-x^2/2}` with
/// `p_k = H_k / sqrt(sqrt(pi) 2^k k!)`, returned as
/// (q_{n-1}, q_n, sum_{k<n} q_k^2).
fn hermite_scaled_tail(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp(); // q_0
    let mut sum_sq = prev * prev;
    if n == 0 {
        return (0.0, prev, 0.0);
    }
    let mut cur = std::f64::consts::SQRT_2 * x * prev; // q_1
    for k in 1..n {
        sum_sq += cur * cur;
        let next =
            x * (2.0 / (k as f64 + 1.0)).sqrt() * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur, sum_sq)
}

/// Gauss-Hermite rule with `n` nodes, symmetrized about the origin.
pub fn gauss_hermite(n: usize) -> Result<LineRule> {
    if n == 0 {
        return Err(FockError::InvalidRuleSize("Gauss-Hermite needs n >= 1".into()));
    }
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = jacobi_eigenvalues(&diag, &offdiag);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (q_prev, q_n, _) = hermite_scaled_tail(n, *x);
            // H_n' = 2 n H_{n-1} translates to p_n' = sqrt(2n) p_{n-1}.
            let deriv = (2.0 * n as f64).sqrt() * q_prev;
            if deriv == 0.0 {
                break;
            }
            let step = q_n / deriv;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1e-3) {
                break;
            }
        }
    }

    // Enforce exact symmetry of the node set.
    for i in 0..n / 2 {
        let mirror = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[n - 1 - i] = mirror;
        nodes[i] = -mirror;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    let mut weights = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    for &x in &nodes {
        let (_, _, sum_sq) = hermite_scaled_tail(n, x);
        let s = 1.0 / sum_sq;
        scaled.push(s);
        weights.push(s * (-x * x).exp());
    }
    Ok(LineRule { nodes, weights, scaled_weights: scaled })
}

/// Uniform rule on `[0, 2 pi)` with `n` nodes.
pub fn angular_uniform(n: usize) -> AngularRule {
    let weight = 2.0 * std::f64::consts::PI / n as f64;
    let nodes = (0..n).map(|j| weight * j as f64).collect();
    AngularRule { nodes, weight }
}

/// Tensor-product planar rule with `n_radial` Gauss-Laguerre shells and
/// `n_angular` uniform angles.
pub fn planar_polar(n_radial: usize, n_angular: usize) -> Result<PlanarRule> {
    let radial = gauss_laguerre(n_radial)?;
    let angular = angular_uniform(n_angular);
    let n_eff = radial.nodes.len();
    let total = n_eff * n_angular;
    let mut points = Vec::with_capacity(total);
    let mut sq_abs = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut scaled_weights = Vec::with_capacity(total);
    let inv_n_angular = 1.0 / n_angular as f64;
    for (i, &s) in radial.nodes.iter().enumerate() {
        let r = s.sqrt();
        let w = radial.weights[i] * inv_n_angular;
        let ws = radial.scaled_weights[i] * inv_n_angular;
        for &theta in &angular.nodes {
            points.push(Complex64::from_polar(r, theta));
            sq_abs.push(s);
            weights.push(w);
            scaled_weights.push(ws);
        }
    }
    Ok(PlanarRule {
        n_radial: n_eff,
        n_angular,
        points,
        sq_abs,
        weights,
        scaled_weights,
    })
}

impl PlanarRule {
    /// The underlying radial rule: squared-radius nodes, plain weights, and
    /// scaled weights (angular normalization undone).
    pub fn radial_shells(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n_ang = self.n_angular as f64;
        let mut nodes = Vec::with_capacity(self.n_radial);
        let mut weights = Vec::with_capacity(self.n_radial);
        let mut scaled = Vec::with_capacity(self.n_radial);
        for i in 0..self.n_radial {
            let idx = i * self.n_angular;
            nodes.push(self.sq_abs[idx]);
            weights.push(self.weights[idx] * n_ang);
            scaled.push(self.scaled_weights[idx] * n_ang);
        }
        (nodes, weights, scaled)
    }

    /// `int_C F dmu` for a closure.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (&w, &z) in self.weights.iter().zip(&self.points) {
            acc += w * f(z);
        }
        acc
    }

    /// Gram matrix helper: accumulates `sum_i c_i v(z_i) v(z_i)^H` where `v`
    /// is the monomial basis vector of length `dim`, into `out` (row-major
    /// `dim x dim`, `out[m][n] += c_i e_m(z_i) conj(e_n(z_i))`).
    pub(crate) fn accumulate_rank_one<F>(&self, dim: usize, coefficient: F, out: &mut [Complex64])
    where
        F: Fn(usize, Complex64) -> Complex64,
    {
        debug_assert_eq!(out.len(), dim * dim);
        let mut v = vec![Complex64::ZERO; dim];
        for (idx, &z) in self.points.iter().enumerate() {
            let c = coefficient(idx, z);
            if c == Complex64::ZERO {
                continue;
            }
            basis_vector_into(z, &mut v);
            for m in 0..dim {
                let cm = c * v[m];
                let row = &mut out[m * dim..(m + 1) * dim];
                for (n, &vn) in v.iter().enumerate() {
                    row[n] += cm * vn.conj();
                }
            }
        }
    }
}

/// The bundle of rules used by the operator constructors and verification
/// suites: a full-accuracy planar rule, two reduced planar rules (for double
/// planar quadrature and for convolution integrals over the plane), and the
/// one-dimensional radial and line rules.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub planar: QuadratureRule,
    pub planar_direct: QuadratureRule,
    pub planar_qha: QuadratureRule,
    pub radial: QuadratureRule,
    pub line: QuadratureRule,
}

/// Node counts for [`RuleSet`] construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSizes {
    pub radial: usize,
    pub angular: usize,
    pub line: usize,
    pub direct_radial: usize,
    pub direct_angular: usize,
    pub qha_radial: usize,
    pub qha_angular: usize,
}

impl Default for RuleSizes {
    fn default() -> Self {
        Self {
            radial: 200,
            angular: 256,
            line: 200,
            direct_radial: 72,
            direct_angular: 144,
            qha_radial: 64,
            qha_angular: 64,
        }
    }
}

impl RuleSet {
    pub fn from_sizes(sizes: RuleSizes) -> Result<Self> {
        Ok(Self {
            planar: make_rule(RuleKind::PlanarPolar, &[sizes.radial, sizes.angular])?,
            planar_direct: make_rule(
                RuleKind::PlanarPolar,
                &[sizes.direct_radial, sizes.direct_angular],
            )?,
            planar_qha: make_rule(RuleKind::PlanarPolar, &[sizes.qha_radial, sizes.qha_angular])?,
            radial: make_rule(RuleKind::RadialLaguerre, &[sizes.radial])?,
            line: make_rule(RuleKind::LineHermite, &[sizes.line])?,
        })
    }

    pub fn with_defaults() -> Result<Self> {
        Self::from_sizes(RuleSizes::default())
    }
}
