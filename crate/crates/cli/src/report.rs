//! Aggregation of previously written suite results.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::export::{write_json, ExportError};
use crate::suites::{CheckStatus, SuiteResult};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummaryRow {
    pub suite: String,
    pub status: CheckStatus,
    pub checks: usize,
    pub wall_time: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    pub overall: CheckStatus,
    /// Files that were present but not parseable as suite results.
    pub unreadable: Vec<String>,
}

/// Reads every `*.json` suite result under `dir` (ignoring `summary.json`)
/// and folds them into a summary. Unreadable members are reported, not
/// skipped silently.
pub fn collect(dir: &Path) -> Result<Summary, ExportError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| ExportError(format!("cannot read report directory {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|ext| ext == "json")
                && p.file_name().is_some_and(|n| n != "summary.json")
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(ExportError(format!(
            "no suite results found in {}",
            dir.display()
        )));
    }
    let mut rows = Vec::new();
    let mut unreadable = Vec::new();
    for path in &paths {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        match fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| serde_json::from_str::<SuiteResult>(&text).map_err(|e| e.to_string()))
        {
            Ok(result) => rows.push(SummaryRow {
                suite: result.suite.clone(),
                status: result.status(),
                checks: result.checks.len(),
                wall_time: result.wall_time,
            }),
            Err(_) => unreadable.push(name),
        }
    }
    let overall = rows
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(CheckStatus::Pass)
        .max(if unreadable.is_empty() { CheckStatus::Pass } else { CheckStatus::Flagged });
    Ok(Summary { rows, overall, unreadable })
}

/// Writes `summary.json` next to the member files and renders the table.
pub fn write_summary(summary: &Summary, dir: &Path) -> Result<PathBuf, ExportError> {
    write_json(summary, dir, "summary")
}

pub fn render(summary: &Summary) -> String {
    let mut out = String::new();
    let width = summary
        .rows
        .iter()
        .map(|r| r.suite.len())
        .chain(summary.unreadable.iter().map(|n| n.len()))
        .max()
        .unwrap_or(5)
        .max(5);
    out.push_str(&format!("{:<width$}  {:<7}  {:>6}  {:>9}\n", "suite", "status", "checks", "time (s)"));
    for row in &summary.rows {
        out.push_str(&format!(
            "{:<width$}  {:<7}  {:>6}  {:>9.3}\n",
            row.suite,
            status_word(row.status),
            row.checks,
            row.wall_time,
        ));
    }
    for name in &summary.unreadable {
        out.push_str(&format!("{name:<width$}  unreadable\n"));
    }
    out.push_str(&format!("overall: {}\n", status_word(summary.overall)));
    out
}

pub fn status_word(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Flagged => "flagged",
        CheckStatus::Fail => "fail",
    }
}
