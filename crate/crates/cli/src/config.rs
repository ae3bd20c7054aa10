//! Run configuration: truncation, quadrature sizes, the radius ladder,
//! per-check tolerances, output location and the jitter seed.
//!
//! Every tolerance a suite uses lives here so that a single file pins a
//! reproducible run. The effective configuration (defaults merged with any
//! file overrides) is hashed into each result payload.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fock_core::RuleSizes;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Default tolerance per check family. Keys are referenced by the suites;
/// a configuration file may override any subset.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("weyl-toeplitz", 1e-6),
    ("berezin-heat", 1e-6),
    ("composition-kernel", 1e-6),
    ("wco-symbol", 1e-5),
    ("wco-berezin", 1e-7),
    ("distance-bound", 1e-9),
    ("volterra-matrix", 1e-10),
    ("volterra-matrix-angular", 1e-8),
    ("volterra-berezin", 1e-6),
    ("volterra-decomposition", 1e-6),
    ("index-volterra", 1e-9),
    ("index-threshold", 1e-6),
    ("singular-multiplier", 1e-5),
    ("singular-norm", 2e-3),
    ("singular-monotone", 1e-9),
    ("singular-berezin", 1e-5),
    ("singular-shift", 1e-5),
    ("singular-vertical-toeplitz", 1e-5),
    ("toeplitztype-convolution", 1e-6),
    ("toeplitztype-autoconvolution", 1e-8),
    ("laguerre-fourier-weyl", 1e-7),
    ("hausdorff-eigen", 1e-10),
    ("hausdorff-norm", 1e-10),
    ("hausdorff-decay", 1e-8),
    ("bargmann-basis", 1e-8),
    ("verdict", 1e-9),
];

/// Everything a verification run depends on besides the code itself.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation dimension for single-quadrature suites.
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    /// Quadrature node counts.
    #[serde(default = "default_quadrature")]
    pub quadrature: RuleSizes,
    /// Radii for the `|z| -> oo` ladder diagnostics.
    #[serde(default = "default_ladder")]
    pub radius_ladder: Vec<f64>,
    /// Per-check tolerances; missing keys fall back to the built-in defaults.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Directory that receives result payloads.
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Seed for sample-point jitter. Results are deterministic for a fixed
    /// seed; the seed never influences tolerances or truncation.
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_truncation() -> usize {
    48
}

fn default_quadrature() -> RuleSizes {
    RuleSizes::default()
}

fn default_ladder() -> Vec<f64> {
    vec![2.0, 4.0, 6.0, 8.0]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_seed() -> u64 {
    7
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            truncation: default_truncation(),
            quadrature: default_quadrature(),
            radius_ladder: default_ladder(),
            tolerances: BTreeMap::new(),
            output_dir: default_output_dir(),
            seed: default_seed(),
        }
    }
}

/// A configuration that failed to parse or validate.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Parses a TOML document and validates the result.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: RunConfig =
            toml::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Loads the explicit path if given, else the `FOCKBENCH_CONFIG`
    /// environment variable's path, else built-in defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let chosen = match path {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os("FOCKBENCH_CONFIG").map(PathBuf::from),
        };
        match chosen {
            Some(p) => {
                let text = std::fs::read_to_string(&p)
                    .map_err(|e| ConfigError(format!("reading {}: {e}", p.display())))?;
                Self::from_toml(&text)
            }
            None => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.truncation == 0 {
            return Err(ConfigError("truncation must be positive".into()));
        }
        let q = &self.quadrature;
        for (label, n) in [
            ("radial", q.radial),
            ("angular", q.angular),
            ("line", q.line),
            ("direct_radial", q.direct_radial),
            ("direct_angular", q.direct_angular),
            ("qha_radial", q.qha_radial),
            ("qha_angular", q.qha_angular),
        ] {
            if n == 0 {
                return Err(ConfigError(format!("quadrature.{label} must be positive")));
            }
        }
        if self.radius_ladder.len() < 2
            || self.radius_ladder[0] <= 0.0
            || self.radius_ladder.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(ConfigError(
                "radius_ladder must hold at least two strictly increasing positive radii".into(),
            ));
        }
        let floor = 100.0 * f64::EPSILON;
        for (key, &tol) in &self.tolerances {
            if DEFAULT_TOLERANCES.iter().all(|(k, _)| k != key) {
                return Err(ConfigError(format!("unknown tolerance key `{key}`")));
            }
            if !(tol >= floor) {
                return Err(ConfigError(format!(
                    "tolerance `{key}` = {tol} is below the floor {floor:e}"
                )));
            }
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(ConfigError("output_dir must not be empty".into()));
        }
        Ok(())
    }

    /// The tolerance for a named check family (file override or default).
    ///
    /// Panics on a key missing from [`DEFAULT_TOLERANCES`]: that is a bug in
    /// the calling suite, not a user error.
    pub fn tolerance(&self, key: &str) -> f64 {
        if let Some(&tol) = self.tolerances.get(key) {
            return tol;
        }
        DEFAULT_TOLERANCES
            .iter()
            .find(|(k, _)| *k == key)
            .map(|&(_, tol)| tol)
            .unwrap_or_else(|| panic!("no default tolerance for key `{key}`"))
    }

    /// SHA-256 over the canonical serialization of the effective
    /// configuration (defaults materialized), hex-encoded and truncated.
    ///
    /// The output directory is excluded: it states where results go, not
    /// what was computed, so redirecting output keeps the hash stable.
    pub fn hash(&self) -> String {
        let mut effective = self.clone();
        effective.output_dir = default_output_dir();
        for (key, tol) in DEFAULT_TOLERANCES {
            effective.tolerances.entry((*key).into()).or_insert(*tol);
        }
        let text = toml::to_string(&effective).expect("config serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_hash_deterministically() {
        let config = RunConfig::default();
        config.validate().unwrap();
        assert_eq!(config.hash(), config.hash());
        assert_eq!(config.hash().len(), 16);
    }

    #[test]
    fn partial_toml_merges_over_defaults() {
        let config = RunConfig::from_toml(
            "truncation = 16\n[tolerances]\n\"weyl-toeplitz\" = 1e-5\n",
        )
        .unwrap();
        assert_eq!(config.truncation, 16);
        assert_eq!(config.tolerance("weyl-toeplitz"), 1e-5);
        assert_eq!(config.tolerance("hausdorff-norm"), 1e-10);
        assert_eq!(config.quadrature.radial, 200);
        assert_ne!(config.hash(), RunConfig::default().hash());
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(RunConfig::from_toml("truncation = 0").is_err());
        assert!(RunConfig::from_toml("radius_ladder = [4.0, 2.0]").is_err());
        assert!(RunConfig::from_toml("[tolerances]\nmystery = 1e-6\n").is_err());
        assert!(RunConfig::from_toml("[tolerances]\n\"weyl-toeplitz\" = 1e-18\n").is_err());
        assert!(RunConfig::from_toml("not toml at all [").is_err());
        assert!(RunConfig::from_toml("unknown_field = 3").is_err());
    }

    #[test]
    fn tolerance_overrides_change_the_hash_only_when_effective() {
        let explicit = RunConfig::from_toml("[tolerances]\n\"wco-symbol\" = 1e-5\n").unwrap();
        // Restating a default leaves the effective configuration unchanged.
        assert_eq!(explicit.hash(), RunConfig::default().hash());
    }
}
