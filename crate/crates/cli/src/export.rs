//! On-disk formats: matrix files, Berezin grids, and spectra.
//!
//! Matrices are structured text (JSON) with `{dim, layout, entries}` where
//! `entries` is a flat row-major list of `[re, im]` pairs. JSON floats are
//! written in shortest round-trip form, so import reproduces every entry
//! bit-exactly. Grids are CSV with the header `re,im,value_re,value_im`.

use std::io::Write;
use std::path::Path;

use fock_core::transforms::GridFunction;
use fock_core::{Provenance, TruncatedOperator};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct ExportError(pub String);

impl std::fmt::Display for ExportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "export error: {}", self.0)
    }
}

impl std::error::Error for ExportError {}

type Result<T> = std::result::Result<T, ExportError>;

fn io_err<E: std::fmt::Display>(context: &str, e: E) -> ExportError {
    ExportError(format!("{context}: {e}"))
}

/// The matrix file payload.
#[derive(Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub layout: String,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_operator(op: &TruncatedOperator) -> Self {
        MatrixFile {
            dim: op.dim,
            layout: "row-major".into(),
            entries: op.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_operator(self) -> Result<TruncatedOperator> {
        if self.layout != "row-major" {
            return Err(ExportError(format!("unsupported layout `{}`", self.layout)));
        }
        let entries: Vec<Complex64> =
            self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        TruncatedOperator::new(self.dim, entries, Provenance::Derived("imported".into()))
            .map_err(|e| ExportError(e.to_string()))
    }
}

pub fn write_matrix(op: &TruncatedOperator, path: &Path) -> Result<()> {
    let payload = MatrixFile::from_operator(op);
    let text = serde_json::to_string_pretty(&payload).map_err(|e| io_err("serializing", e))?;
    std::fs::write(path, text).map_err(|e| io_err(&format!("writing {}", path.display()), e))
}

pub fn read_matrix(path: &Path) -> Result<TruncatedOperator> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| io_err(&format!("reading {}", path.display()), e))?;
    let payload: MatrixFile =
        serde_json::from_str(&text).map_err(|e| io_err("parsing matrix file", e))?;
    payload.into_operator()
}

/// Writes grid samples as CSV. Rust's shortest-form float output round-trips,
/// so the file is as exact as the payload.
pub fn write_grid_csv(grid: &GridFunction, path: &Path) -> Result<()> {
    let mut out = String::from("re,im,value_re,value_im\n");
    for (z, v) in grid.points.iter().zip(&grid.values) {
        out.push_str(&format!("{},{},{},{}\n", z.re, z.im, v.re, v.im));
    }
    std::fs::write(path, out).map_err(|e| io_err(&format!("writing {}", path.display()), e))
}

/// The spectrum file payload: singular values always, eigenvalues only when
/// the truncation is (numerically) Hermitian so that they are well defined
/// real numbers; both sorted descending.
#[derive(Serialize, Deserialize)]
pub struct SpectrumFile {
    pub dim: usize,
    pub singular_values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
}

pub fn spectrum_of(op: &TruncatedOperator) -> SpectrumFile {
    let mut singular_values = op.singular_values();
    singular_values.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    let eigenvalues = if op.hermitian_defect() <= 1e-10 * (1.0 + op.max_abs_entry()) {
        let mat = op.to_dmatrix();
        let hermitian = nalgebra::DMatrix::from_fn(op.dim, op.dim, |r, c| {
            0.5 * (mat[(r, c)] + mat[(c, r)].conj())
        });
        let mut eigs: Vec<f64> = hermitian
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        eigs.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        Some(eigs)
    } else {
        None
    };
    SpectrumFile { dim: op.dim, singular_values, eigenvalues }
}

pub fn write_spectrum(spectrum: &SpectrumFile, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(spectrum).map_err(|e| io_err("serializing", e))?;
    std::fs::write(path, text).map_err(|e| io_err(&format!("writing {}", path.display()), e))
}

/// Writes a JSON payload under `dir/<name>.json`, creating the directory.
pub fn write_json<T: Serialize>(payload: &T, dir: &Path, name: &str) -> Result<std::path::PathBuf> {
    std::fs::create_dir_all(dir)
        .map_err(|e| io_err(&format!("creating {}", dir.display()), e))?;
    let path = dir.join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(payload).map_err(|e| io_err("serializing", e))?;
    let mut file = std::fs::File::create(&path)
        .map_err(|e| io_err(&format!("creating {}", path.display()), e))?;
    file.write_all(text.as_bytes())
        .and_then(|()| file.write_all(b"\n"))
        .map_err(|e| io_err(&format!("writing {}", path.display()), e))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fock_core::operators::weyl_matrix;

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let op = weyl_matrix(Complex64::new(0.37, -0.81), 12).unwrap();
        let dir = std::env::temp_dir().join("fockbench-export-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("weyl.json");
        write_matrix(&op, &path).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(back.dim, op.dim);
        for (a, b) in op.entries.iter().zip(&back.entries) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn spectrum_detects_hermitian_diagonals() {
        let diag: Vec<Complex64> =
            (0..6).map(|n| Complex64::new(0.5f64.powi(n + 1), 0.0)).collect();
        let op = TruncatedOperator::from_diagonal(&diag, Provenance::Derived("test".into()));
        let spectrum = spectrum_of(&op);
        let eigs = spectrum.eigenvalues.expect("diagonal matrices are hermitian");
        assert!((eigs[0] - 0.5).abs() < 1e-14);
        assert!(eigs.windows(2).all(|w| w[0] >= w[1]));
        assert!(spectrum.singular_values.windows(2).all(|w| w[0] >= w[1]));

        let w = weyl_matrix(Complex64::new(0.4, 0.2), 8).unwrap();
        assert!(spectrum_of(&w).eigenvalues.is_none());
    }
}
