//! Truncated operator matrices and the algebra over them.
//!
//! Every operator in the zoo is realized as its *finite section*: the matrix
//! `entries[m][n] = <A e_n, e_m>` over the first `N` basis vectors. Finite
//! sections compose, take adjoints, and combine linearly like the operators
//! they approximate; each result records how it was built in a small
//! expression tree so reports can name what was multiplied.

mod hausdorff;
mod singular;
mod toeplitz;
mod toeplitz_type;
mod volterra;
mod wco;
mod weyl;

pub use hausdorff::{hausdorff_matrix, hausdorff_toeplitz_symbol};
pub use singular::{
    phi_from_multiplier, singular_integral_matrix_direct, singular_integral_matrix_multiplier,
    PHI_SAFE_IM_RADIUS,
};
pub use toeplitz::{toeplitz_matrix, toeplitz_radial_eigenvalues};
pub use toeplitz_type::toeplitz_type_matrix;
pub use volterra::{v_z2_half_matrix, v_z_matrix, volterra_matrix};
pub use wco::{wco_berezin_symbol, weighted_composition_matrix};
pub use weyl::{weyl_matrix, weyl_scaled_basis_coeffs};

use crate::basis::ln_factorial;
use crate::error::{FockError, Result};
use crate::spec::OperatorSpec;
use crate::types::ComplexPoint;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How a [`TruncatedOperator`] came to be.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    /// Built directly from an operator description.
    Spec(OperatorSpec),
    /// Matrix product: apply the right factor first.
    Compose(Box<Provenance>, Box<Provenance>),
    /// Conjugate transpose.
    Adjoint(Box<Provenance>),
    /// Weighted sum of operators.
    Combination(Vec<(ComplexPoint, Provenance)>),
    /// A named construction outside the spec vocabulary (identity, blocks,
    /// convolutions, ...).
    Derived(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Spec(spec) => write!(f, "{}", spec.label()),
            Provenance::Compose(a, b) => write!(f, "({a} . {b})"),
            Provenance::Adjoint(a) => write!(f, "adjoint({a})"),
            Provenance::Combination(terms) => {
                write!(f, "combine(")?;
                for (i, (c, p)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({}, {}i)*{p}", c.re, c.im)?;
                }
                write!(f, ")")
            }
            Provenance::Derived(name) => write!(f, "{name}"),
        }
    }
}

/// The finite section of an operator on `F^2`, dense and row-major:
/// `entries[m * dim + n] = <A e_n, e_m>`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    pub dim: usize,
    pub entries: Vec<Complex64>,
    pub provenance: Provenance,
    /// For series-based constructors: a bound on the column mass discarded
    /// by the degree-`dim - 1` truncation (exact where the full column norm
    /// is known, a window estimate otherwise). `None` for quadrature-built
    /// matrices.
    pub tail_bound: Option<f64>,
}

impl TruncatedOperator {
    pub fn new(dim: usize, entries: Vec<Complex64>, provenance: Provenance) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(FockError::DimensionMismatch(format!(
                "expected {dim}x{dim} = {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(FockError::NonFinite(format!(
                "operator entries for {provenance}"
            )));
        }
        Ok(Self { dim, entries, provenance, tail_bound: None })
    }

    pub fn zeros(dim: usize, provenance: Provenance) -> Self {
        Self { dim, entries: vec![Complex64::ZERO; dim * dim], provenance, tail_bound: None }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim, Provenance::Derived("identity".into()));
        for n in 0..dim {
            out.entries[n * dim + n] = Complex64::ONE;
        }
        out
    }

    pub fn from_diagonal(diag: &[Complex64], provenance: Provenance) -> Self {
        let dim = diag.len();
        let mut out = Self::zeros(dim, provenance);
        for (n, &d) in diag.iter().enumerate() {
            out.entries[n * dim + n] = d;
        }
        out
    }

    pub fn with_tail_bound(mut self, tail: f64) -> Self {
        self.tail_bound = Some(tail);
        self
    }

    #[inline]
    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.entries[m * self.dim + n]
    }

    #[inline]
    pub fn set(&mut self, m: usize, n: usize, value: Complex64) {
        self.entries[m * self.dim + n] = value;
    }

    pub fn row(&self, m: usize) -> &[Complex64] {
        &self.entries[m * self.dim..(m + 1) * self.dim]
    }

    /// Matrix-vector product `A v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(FockError::DimensionMismatch(format!(
                "vector length {} against dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok((0..self.dim)
            .map(|m| {
                self.row(m)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect())
    }

    /// Sum of the diagonal over the full truncation.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|n| self.entry(n, n)).sum()
    }

    /// The trace split into the leading part and the last `dim/4` diagonal
    /// entries; a large tail part signals truncation leakage.
    pub fn trace_with_tail(&self) -> (Complex64, Complex64) {
        let tail_len = self.dim / 4;
        let cut = self.dim - tail_len;
        let head: Complex64 = (0..cut).map(|n| self.entry(n, n)).sum();
        let tail: Complex64 = (cut..self.dim).map(|n| self.entry(n, n)).sum();
        (head, tail)
    }

    /// The leading `k x k` block as its own operator.
    pub fn leading_block(&self, k: usize) -> Result<TruncatedOperator> {
        if k == 0 || k > self.dim {
            return Err(FockError::DimensionMismatch(format!(
                "block size {k} outside 1..={}",
                self.dim
            )));
        }
        let mut entries = Vec::with_capacity(k * k);
        for m in 0..k {
            entries.extend_from_slice(&self.entries[m * self.dim..m * self.dim + k]);
        }
        Ok(TruncatedOperator {
            dim: k,
            entries,
            provenance: Provenance::Derived(format!("leading-block({k}, {})", self.provenance)),
            tail_bound: None,
        })
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |m, n| self.entry(m, n))
    }

    /// Largest singular value of the truncation.
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let svd = self.to_dmatrix().svd(false, false);
        let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |acc, e| acc.max(e.norm()))
    }

    /// Largest deviation from the conjugate-transpose symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..self.dim {
            for n in 0..=m {
                worst = worst.max((self.entry(m, n) - self.entry(n, m).conj()).norm());
            }
        }
        worst
    }
}

/// Largest entrywise deviation between two sections of equal dimension.
pub fn max_entry_distance(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<f64> {
    if a.dim != b.dim {
        return Err(FockError::DimensionMismatch(format!(
            "comparing dimensions {} and {}",
            a.dim, b.dim
        )));
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm())))
}

/// Matrix product `A B` (apply `B` first).
pub fn compose(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    if a.dim != b.dim {
        return Err(FockError::DimensionMismatch(format!(
            "composing dimensions {} and {}",
            a.dim, b.dim
        )));
    }
    let dim = a.dim;
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for m in 0..dim {
        let out_row = &mut entries[m * dim..(m + 1) * dim];
        for k in 0..dim {
            let amk = a.entries[m * dim + k];
            if amk == Complex64::ZERO {
                continue;
            }
            let b_row = &b.entries[k * dim..(k + 1) * dim];
            for (slot, bkn) in out_row.iter_mut().zip(b_row) {
                *slot += amk * bkn;
            }
        }
    }
    Ok(TruncatedOperator {
        dim,
        entries,
        provenance: Provenance::Compose(
            Box::new(a.provenance.clone()),
            Box::new(b.provenance.clone()),
        ),
        tail_bound: None,
    })
}

/// Conjugate transpose.
pub fn adjoint(a: &TruncatedOperator) -> TruncatedOperator {
    let dim = a.dim;
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for m in 0..dim {
        for n in 0..dim {
            entries[m * dim + n] = a.entries[n * dim + m].conj();
        }
    }
    TruncatedOperator {
        dim,
        entries,
        provenance: match &a.provenance {
            // adjoint(adjoint(P)) collapses back to P.
            Provenance::Adjoint(inner) => (**inner).clone(),
            other => Provenance::Adjoint(Box::new(other.clone())),
        },
        tail_bound: None,
    }
}

/// Weighted sum `sum_i c_i A_i`.
pub fn linear_combine(terms: &[(Complex64, &TruncatedOperator)]) -> Result<TruncatedOperator> {
    let Some(((_, first), rest)) = terms.split_first() else {
        return Err(FockError::InvalidParameter(
            "linear_combine needs at least one term".into(),
        ));
    };
    let dim = first.dim;
    if rest.iter().any(|(_, t)| t.dim != dim) {
        return Err(FockError::DimensionMismatch(
            "linear_combine terms have differing dimensions".into(),
        ));
    }
    let mut entries = vec![Complex64::ZERO; dim * dim];
    let mut provenance = Vec::with_capacity(terms.len());
    for (c, op) in terms {
        for (slot, e) in entries.iter_mut().zip(&op.entries) {
            *slot += c * e;
        }
        provenance.push((ComplexPoint::from(*c), op.provenance.clone()));
    }
    Ok(TruncatedOperator {
        dim,
        entries,
        provenance: Provenance::Combination(provenance),
        tail_bound: None,
    })
}

/// The shift `A^{[k]}`: `A^{[k]} e_n = ((n+1)(n+2)...(n+k))^{-1/2} e_{n+k}`,
/// with `A^{[0]} = I`.
pub fn shift_a_k_matrix(k: usize, dim: usize) -> TruncatedOperator {
    let mut out = TruncatedOperator::zeros(dim, Provenance::Spec(OperatorSpec::Shift { k: k as u32 }));
    for n in 0..dim.saturating_sub(k) {
        // ((n+1)...(n+k))^{-1/2} = sqrt(n! / (n+k)!)
        let value = (0.5 * (ln_factorial(n) - ln_factorial(n + k))).exp();
        out.set(n + k, n, Complex64::new(value, 0.0));
    }
    out
}

/// The parity operator `R e_n = (-1)^n e_n`.
pub fn parity_matrix(dim: usize) -> TruncatedOperator {
    let diag: Vec<Complex64> = (0..dim)
        .map(|n| Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect();
    TruncatedOperator::from_diagonal(&diag, Provenance::Spec(OperatorSpec::Parity))
}
