//! Side-by-side comparison of suites on one objective.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::config::{Format, SuiteConfig};
use crate::error::{BenchError, ConfigError};
use crate::report::format_point;
use crate::suite::{run_suite_with, Schedule};

/// Wall times depend on the machine; they are never compared against published figures.
pub const WALL_TIME_NOTE: &str = "mean_wall_ms is measured on this machine and is environment-specific";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    pub best_fitness: f64,
    pub best_point: Vec<f64>,
    pub mean_wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub function: String,
    pub note: String,
    pub configs: Vec<SuiteConfig>,
    pub rows: Vec<ComparisonRow>,
}

/// Runs every config (at least two, all on the same objective) and tabulates the best
/// fitness, its point and the mean per-epoch wall time.
pub fn compare(configs: &[SuiteConfig], schedule: Schedule) -> Result<Comparison, BenchError> {
    let first = configs.first().filter(|_| configs.len() >= 2).ok_or_else(|| {
        ConfigError::new("configs", format!("compare needs at least 2 configs, got {}", configs.len()))
    })?;
    if let Some(other) = configs.iter().find(|c| c.function != first.function) {
        return Err(ConfigError::new(
            "function",
            format!(
                "all configs must share one objective, got `{}` and `{}`",
                first.function, other.function
            ),
        )
        .into());
    }
    let mut rows = Vec::with_capacity(configs.len());
    let mut resolved = Vec::with_capacity(configs.len());
    for c in configs {
        let report = run_suite_with(c, schedule)?;
        let wall: f64 = report.records.iter().map(|r| r.wall_ms).sum::<f64>() / report.records.len() as f64;
        rows.push(ComparisonRow {
            label: report.config.label(),
            best_fitness: report.summary.max_obtained,
            best_point: report.summary.max_argpoints[0].clone(),
            mean_wall_ms: wall,
        });
        resolved.push(report.config);
    }
    Ok(Comparison { function: first.function.clone(), note: WALL_TIME_NOTE.into(), configs: resolved, rows })
}

pub fn write_comparison<W: Write>(cmp: &Comparison, format: Format, mut out: W) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, cmp)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["label", "best_fitness", "best_point", "mean_wall_ms"])?;
            for r in &cmp.rows {
                w.write_record([
                    r.label.clone(),
                    r.best_fitness.to_string(),
                    format_point(&r.best_point),
                    format!("{:.4}", r.mean_wall_ms),
                ])?;
            }
            w.flush()
        }
    }
}
