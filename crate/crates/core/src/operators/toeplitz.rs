//! Toeplitz operators `T_f = P M_f` on the truncation.
//!
//! Entries are `<f e_n, e_m>` over the Gaussian measure. Three evaluation
//! strategies are used, chosen by symbol class:
//!
//! * radial symbols — diagonal matrices; the angular integral is `2 pi`
//!   exactly and the radial integral is done by Gauss-Laguerre quadrature;
//! * angular symbols `(z/|z|)^p` — the angular integral enforces the
//!   selection rule `m = n + p` exactly, leaving one radial integral;
//! * everything else — the full planar rule.
//!
//! All radial integrands are evaluated in log space against the *scaled*
//! weights, which keeps every term at or below the symbol's magnitude no
//! matter how large the node.

use crate::basis::ln_factorial;
use crate::error::{FockError, Result};
use crate::operators::{Provenance, TruncatedOperator};
use crate::quad::{QuadratureRule, RuleKind};
use crate::spec::OperatorSpec;
use crate::symbols::{RadialProfile, SymbolSpec};
use num_complex::Complex64;

/// Radial nodes/weights from either a radial rule or the radial shells of a
/// planar rule: `(squared-radius nodes, plain weights, scaled weights)`.
fn radial_data(rule: &QuadratureRule) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    match rule {
        QuadratureRule::Radial(r) => {
            Ok((r.nodes.clone(), r.weights.clone(), r.scaled_weights.clone()))
        }
        QuadratureRule::Planar(p) => Ok(p.radial_shells()),
        other => Err(FockError::RuleKindMismatch {
            expected: RuleKind::RadialLaguerre,
            got: other.kind(),
        }),
    }
}

/// The eigenvalue sequence of a radial Toeplitz operator:
/// `a_n = (1/n!) int_0^oo g(sqrt(s)) s^n e^{-s} ds`.
pub fn toeplitz_radial_eigenvalues(
    g: &RadialProfile,
    dim: usize,
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    let (nodes, _, scaled) = radial_data(rule)?;
    let ln_nodes: Vec<f64> = nodes.iter().map(|s| s.ln()).collect();
    let values: Vec<f64> = nodes.iter().map(|&s| g.eval(s.sqrt())).collect();
    let mut out = Vec::with_capacity(dim);
    for n in 0..dim {
        let ln_nfact = ln_factorial(n);
        let mut acc = 0.0;
        for i in 0..nodes.len() {
            // s^n e^{-s} / n! <= 1 (Poisson mass), so each term is bounded
            // by the scaled weight times the profile value.
            acc += scaled[i] * values[i] * (n as f64 * ln_nodes[i] - ln_nfact - nodes[i]).exp();
        }
        out.push(acc);
    }
    Ok(out)
}

/// The truncated Toeplitz operator for a symbol.
pub fn toeplitz_matrix(
    symbol: &SymbolSpec,
    dim: usize,
    rule: &QuadratureRule,
) -> Result<TruncatedOperator> {
    symbol.validate()?;
    let provenance = Provenance::Spec(OperatorSpec::Toeplitz { symbol: symbol.clone() });
    match symbol {
        SymbolSpec::RadialProfile { g } => {
            let diag = toeplitz_radial_eigenvalues(g, dim, rule)?;
            let diag: Vec<Complex64> = diag.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
            TruncatedOperator::new(dim, diagonal_entries(&diag), provenance)
        }
        SymbolSpec::GaussianRadial { c } => {
            let diag =
                toeplitz_radial_eigenvalues(&RadialProfile::Gaussian { c: *c }, dim, rule)?;
            let diag: Vec<Complex64> = diag.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
            TruncatedOperator::new(dim, diagonal_entries(&diag), provenance)
        }
        SymbolSpec::Angular { power } => {
            let (nodes, _, scaled) = radial_data(rule)?;
            let ln_nodes: Vec<f64> = nodes.iter().map(|s| s.ln()).collect();
            let mut entries = vec![Complex64::ZERO; dim * dim];
            for n in 0..dim {
                let m = n as i64 + power;
                if m < 0 || m >= dim as i64 {
                    continue;
                }
                let m = m as usize;
                // (1/sqrt(n! m!)) int s^{(n+m)/2} e^{-s} ds by quadrature.
                let half_deg = 0.5 * (n + m) as f64;
                let ln_norm = 0.5 * (ln_factorial(n) + ln_factorial(m));
                let mut acc = 0.0;
                for i in 0..nodes.len() {
                    acc += scaled[i] * (half_deg * ln_nodes[i] - ln_norm - nodes[i]).exp();
                }
                entries[m * dim + n] = Complex64::new(acc, 0.0);
            }
            TruncatedOperator::new(dim, entries, provenance)
        }
        _ => {
            let planar = rule.as_planar()?;
            // gram[m][n] = sum_i w_i f(z_i) e_m(z_i) conj(e_n(z_i));
            // the Toeplitz entry <f e_n, e_m> is its transpose.
            let mut gram = vec![Complex64::ZERO; dim * dim];
            planar.accumulate_rank_one(
                dim,
                |idx, z| planar.weights[idx] * symbol.eval(z),
                &mut gram,
            );
            let mut entries = vec![Complex64::ZERO; dim * dim];
            for m in 0..dim {
                for n in 0..dim {
                    entries[m * dim + n] = gram[n * dim + m];
                }
            }
            TruncatedOperator::new(dim, entries, provenance)
        }
    }
}

fn diagonal_entries(diag: &[Complex64]) -> Vec<Complex64> {
    let dim = diag.len();
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for (n, &d) in diag.iter().enumerate() {
        entries[n * dim + n] = d;
    }
    entries
}
