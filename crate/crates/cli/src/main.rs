// Guards written as `!(x > 0.0)` are deliberate: they reject NaN along with
// the out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use fock_core::operators::{adjoint, compose};
use fock_core::transforms::{berezin_grid, reliability_radius, square_grid};
use fock_core::{build_operator, OperatorSpec, RuleSet, TruncatedOperator};

use fockbench::config::RunConfig;
use fockbench::export;
use fockbench::report;
use fockbench::suites::{self, CheckStatus, SuiteResult};

const EXIT_FAIL: u8 = 1;
const EXIT_FLAGGED: u8 = 2;
const EXIT_UNKNOWN_SUITE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_PRECONDITION: u8 = 66;
const EXIT_RADIUS: u8 = 67;
const EXIT_EMPTY_DIR: u8 = 68;
const EXIT_INTERNAL: u8 = 70;

/// Numerical verification bench for truncated Fock-space operators.
#[derive(Parser)]
#[command(name = "fockbench", version, about)]
struct Cli {
    /// Run configuration (TOML); falls back to $FOCKBENCH_CONFIG, then to
    /// built-in defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides the configuration).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Truncation dimension (overrides the configuration).
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,
    /// Proceed past reliability-radius guards.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one named verification suite, or `all`.
    Verify {
        /// Suite name; `--suite <NAME>` is an equivalent spelling.
        #[arg(
            value_name = "SUITE",
            required_unless_present = "suite_flag",
            conflicts_with = "suite_flag"
        )]
        suite: Option<String>,
        #[arg(long = "suite", value_name = "SUITE")]
        suite_flag: Option<String>,
        /// List the available suites and exit.
        #[arg(long, conflicts_with_all = ["suite", "suite_flag"])]
        list: bool,
    },
    /// Export the truncated matrix of an operator specification.
    Matrix {
        /// Operator specification file (TOML with `class` and `params`).
        spec: PathBuf,
    },
    /// Sample the Berezin transform on a square grid and write CSV.
    BerezinGrid {
        spec: PathBuf,
        /// Grid center as `re,im`.
        #[arg(long, value_parser = parse_complex, default_value = "0,0", allow_hyphen_values = true)]
        center: Complex64,
        /// Half side length of the square grid.
        #[arg(long, default_value_t = 1.5)]
        half_width: f64,
        /// Samples per side.
        #[arg(long, default_value_t = 17)]
        resolution: usize,
    },
    /// Write singular values, and eigenvalues for hermitian truncations.
    Spectrum {
        spec: PathBuf,
        /// Analyze the Gram operator A*A instead of A.
        #[arg(long)]
        gram: bool,
    },
    /// Aggregate the suite results in a directory into a summary.
    Report {
        /// Directory of suite results; defaults to the configured output dir.
        dir: Option<PathBuf>,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::new(EXIT_INTERNAL, e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = match RunConfig::load(cli.config.as_deref()) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("configuration error: {}", e.0);
            return ExitCode::from(EXIT_PARSE);
        }
    };
    if let Some(n) = cli.truncation {
        config.truncation = n;
    }
    if let Some(dir) = &cli.out {
        config.output_dir = dir.clone();
    }
    if let Err(e) = config.validate() {
        eprintln!("configuration error: {}", e.0);
        return ExitCode::from(EXIT_PARSE);
    }

    let outcome = match &cli.command {
        Command::Verify { suite, suite_flag, list } => {
            if *list {
                for name in suites::SUITE_NAMES {
                    println!("{name}");
                }
                return ExitCode::SUCCESS;
            }
            let name = suite.as_deref().or(suite_flag.as_deref()).expect("clap enforces presence");
            cmd_verify(name, &config)
        }
        Command::Matrix { spec } => cmd_matrix(spec, &config),
        Command::BerezinGrid { spec, center, half_width, resolution } => {
            cmd_berezin_grid(spec, *center, *half_width, *resolution, cli.force, &config)
        }
        Command::Spectrum { spec, gram } => cmd_spectrum(spec, *gram, &config),
        Command::Report { dir } => cmd_report(dir.as_deref().unwrap_or(&config.output_dir)),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn status_exit(status: CheckStatus) -> ExitCode {
    ExitCode::from(match status {
        CheckStatus::Pass => 0,
        CheckStatus::Fail => EXIT_FAIL,
        CheckStatus::Flagged => EXIT_FLAGGED,
    })
}

fn cmd_verify(name: &str, config: &RunConfig) -> Result<ExitCode, CliError> {
    let names: Vec<&str> = if name == "all" {
        suites::SUITE_NAMES.to_vec()
    } else if suites::SUITE_NAMES.contains(&name) {
        vec![name]
    } else {
        return Err(CliError::new(
            EXIT_UNKNOWN_SUITE,
            format!(
                "unknown suite `{name}`; run `fockbench verify --list` for the available names"
            ),
        ));
    };
    let mut worst = CheckStatus::Pass;
    for suite in names {
        let result = suites::run_suite(suite, config)
            .map_err(|e| internal(format!("suite {suite} aborted: {e}")))?;
        let path = export::write_json(&result, &config.output_dir, suite).map_err(internal)?;
        print_suite(&result, &path);
        worst = worst.max(result.status());
    }
    Ok(status_exit(worst))
}

fn print_suite(result: &SuiteResult, path: &Path) {
    println!(
        "{} [{}] ({:.3}s, config {})",
        result.suite,
        report::status_word(result.status()),
        result.wall_time,
        result.config_hash
    );
    for check in &result.checks {
        println!(
            "  {:<44} {:<7} measured {:>12.4e}  expected {:>12.4e}  tol {:.1e}",
            check.name,
            report::status_word(check.status),
            check.measured,
            check.expected,
            check.tolerance
        );
    }
    println!("  wrote {}", path.display());
}

fn load_spec(path: &Path) -> Result<OperatorSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::new(EXIT_PARSE, format!("cannot read spec {}: {e}", path.display()))
    })?;
    toml::from_str(&text).map_err(|e| {
        CliError::new(EXIT_PARSE, format!("cannot parse spec {}: {e}", path.display()))
    })
}

fn build(spec: &OperatorSpec, config: &RunConfig) -> Result<TruncatedOperator, CliError> {
    let rules = RuleSet::from_sizes(config.quadrature).map_err(internal)?;
    build_operator(spec, config.truncation, &rules)
        .map_err(|e| CliError::new(EXIT_PRECONDITION, format!("precondition violated: {e}")))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "operator".into())
}

fn ensure_output_dir(config: &RunConfig) -> Result<(), CliError> {
    std::fs::create_dir_all(&config.output_dir).map_err(|e| {
        internal(format!("creating {}: {e}", config.output_dir.display()))
    })
}

fn cmd_matrix(spec_path: &Path, config: &RunConfig) -> Result<ExitCode, CliError> {
    let spec = load_spec(spec_path)?;
    let op = build(&spec, config)?;
    ensure_output_dir(config)?;
    let out = config.output_dir.join(format!("{}-matrix.json", stem(spec_path)));
    export::write_matrix(&op, &out).map_err(internal)?;
    println!("wrote {} ({}x{})", out.display(), op.dim, op.dim);
    Ok(ExitCode::SUCCESS)
}

fn cmd_berezin_grid(
    spec_path: &Path,
    center: Complex64,
    half_width: f64,
    resolution: usize,
    force: bool,
    config: &RunConfig,
) -> Result<ExitCode, CliError> {
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(CliError::new(EXIT_PRECONDITION, "half-width must be positive and finite"));
    }
    if resolution < 2 {
        return Err(CliError::new(EXIT_PRECONDITION, "resolution must be at least 2"));
    }
    let spec = load_spec(spec_path)?;
    let op = build(&spec, config)?;
    let reach = center.norm() + std::f64::consts::SQRT_2 * half_width;
    let limit = reliability_radius(op.dim);
    if reach > limit && !force {
        return Err(CliError::new(
            EXIT_RADIUS,
            format!(
                "grid reaches |z| = {reach:.3}, beyond the reliability radius {limit:.3} \
                 at truncation {}; pass --force to sample anyway",
                op.dim
            ),
        ));
    }
    let points: Vec<Complex64> =
        square_grid(half_width, resolution).into_iter().map(|p| p + center).collect();
    let grid = berezin_grid(&op, &points);
    ensure_output_dir(config)?;
    let out = config.output_dir.join(format!("{}-berezin.csv", stem(spec_path)));
    export::write_grid_csv(&grid, &out).map_err(internal)?;
    let flagged = grid.reliable.iter().filter(|&&r| !r).count();
    if flagged > 0 {
        eprintln!("warning: {flagged} of {} samples lie outside the reliable disc", grid.points.len());
    }
    println!("wrote {} ({} samples)", out.display(), grid.points.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(spec_path: &Path, gram: bool, config: &RunConfig) -> Result<ExitCode, CliError> {
    let spec = load_spec(spec_path)?;
    let mut op = build(&spec, config)?;
    let mut name = format!("{}-spectrum", stem(spec_path));
    if gram {
        op = compose(&adjoint(&op), &op).map_err(internal)?;
        name = format!("{}-gram-spectrum", stem(spec_path));
    }
    let spectrum = export::spectrum_of(&op);
    ensure_output_dir(config)?;
    let out = config.output_dir.join(format!("{name}.json"));
    export::write_spectrum(&spectrum, &out).map_err(internal)?;
    println!(
        "wrote {} ({} singular values{})",
        out.display(),
        spectrum.singular_values.len(),
        if spectrum.eigenvalues.is_some() { ", hermitian eigenvalues included" } else { "" }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(dir: &Path) -> Result<ExitCode, CliError> {
    let summary = report::collect(dir)
        .map_err(|e| CliError::new(EXIT_EMPTY_DIR, e.to_string()))?;
    report::write_summary(&summary, dir).map_err(internal)?;
    print!("{}", report::render(&summary));
    Ok(status_exit(summary.overall))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}
