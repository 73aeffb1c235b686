//! Run aggregation and CSV export.
//!
//! Schemas (header lines are exact, rows end in `\n`, `.` is the decimal
//! separator):
//!
//! * trace: `generation,basin_0,...,basin_{P-1},best_fitness,evaluations`
//! * sweep: `population_size,runs,successes,success_rate,aes`
//! * report: `runs,successes,success_rate,aes,mean_restarts`
//! * runs: `seed,outcome,success,evaluations,restarts`
//!
//! Absent values (no successful run, no restart count) are empty fields.
//! Reals are written in shortest round-trip form, zero-padded to at least
//! six significant digits, so parsing a file reproduces the exact values.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::climber::ClimbOutcome;
use crate::error::{Error, Result};
use crate::evolver::{GaRun, GenerationStats, Outcome};

/// One line of an experiment: what a single seeded run achieved.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub seed: u64,
    pub outcome: String,
    pub success: bool,
    /// Evaluations to solution when successful, otherwise evaluations spent.
    pub evaluations: u64,
    pub restarts: Option<u64>,
}

pub trait RunRecord {
    fn summary(&self) -> RunSummary;
}

impl RunRecord for GaRun {
    fn summary(&self) -> RunSummary {
        RunSummary {
            seed: self.config.seed,
            outcome: self.outcome.as_str().to_string(),
            success: self.outcome == Outcome::OptimumFound,
            evaluations: self
                .evaluations_to_success
                .unwrap_or_else(|| self.evaluations_used()),
            restarts: None,
        }
    }
}

impl RunRecord for ClimbOutcome {
    fn summary(&self) -> RunSummary {
        RunSummary {
            seed: self.seed,
            outcome: if self.success { "optimum_found" } else { "budget_exhausted" }.to_string(),
            success: self.success,
            evaluations: self.evaluations_used,
            restarts: Some(self.restarts),
        }
    }
}

/// Success rate and average evaluations to solution over repeated runs.
///
/// `aes` and `mean_restarts` average over successful runs only.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub aes: Option<f64>,
    pub mean_restarts: Option<f64>,
    pub per_run: Vec<RunSummary>,
}

pub fn aggregate<R: RunRecord>(runs: &[R]) -> Result<ExperimentReport> {
    aggregate_summaries(runs.iter().map(RunRecord::summary).collect())
}

pub fn aggregate_summaries(mut per_run: Vec<RunSummary>) -> Result<ExperimentReport> {
    if per_run.is_empty() {
        return Err(Error::invalid("cannot aggregate an empty run list"));
    }
    per_run.sort_by_key(|r| r.seed);
    let runs = per_run.len();
    let wins: Vec<&RunSummary> = per_run.iter().filter(|r| r.success).collect();
    let successes = wins.len();
    let mean = |xs: Vec<u64>| -> Option<f64> {
        (!xs.is_empty()).then(|| xs.iter().map(|&x| x as f64).sum::<f64>() / xs.len() as f64)
    };
    let aes = mean(wins.iter().map(|r| r.evaluations).collect());
    let restarts: Vec<u64> = wins.iter().filter_map(|r| r.restarts).collect();
    let mean_restarts = if restarts.len() == successes { mean(restarts) } else { None };
    Ok(ExperimentReport {
        runs,
        successes,
        success_rate: successes as f64 / runs as f64,
        aes,
        mean_restarts,
        per_run,
    })
}

/// Shortest round-trip decimal, zero-padded to six significant digits.
pub fn format_real(v: f64) -> String {
    let mut s = v.to_string();
    let significant = s
        .trim_start_matches('-')
        .replace('.', "")
        .trim_start_matches('0')
        .len();
    if significant < 6 {
        if !s.contains('.') {
            s.push('.');
        }
        s.extend(std::iter::repeat_n('0', 6 - significant));
    }
    s
}

fn opt_real(v: Option<f64>) -> String {
    v.map(format_real).unwrap_or_default()
}

pub fn export_trace<W: Write>(run: &GaRun, sink: &mut W) -> io::Result<()> {
    let peaks = run.trace.first().map_or(0, |s| s.basin_counts.len());
    let mut header = String::from("generation");
    for i in 0..peaks {
        header.push_str(&format!(",basin_{i}"));
    }
    header.push_str(",best_fitness,evaluations\n");
    sink.write_all(header.as_bytes())?;
    for s in &run.trace {
        let mut row = s.generation.to_string();
        for c in &s.basin_counts {
            row.push(',');
            row.push_str(&c.to_string());
        }
        row.push_str(&format!(",{},{}\n", format_real(s.best_fitness), s.evaluations_used));
        sink.write_all(row.as_bytes())?;
    }
    Ok(())
}

pub fn trace_csv(run: &GaRun) -> String {
    let mut buf = Vec::new();
    export_trace(run, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

/// Reads a trace written by [`export_trace`] back into generation records.
pub fn parse_trace(text: &str) -> Result<Vec<GenerationStats>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty trace"))?
        .split(',')
        .collect();
    let cols = header.len();
    if cols < 3
        || header[0] != "generation"
        || header[cols - 2] != "best_fitness"
        || header[cols - 1] != "evaluations"
        || header[1..cols - 2]
            .iter()
            .enumerate()
            .any(|(i, h)| *h != format!("basin_{i}"))
    {
        return Err(Error::parse(1, "unexpected trace header"));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let lineno = i + 2;
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != cols {
                return Err(Error::parse(
                    lineno,
                    format!("expected {cols} fields, found {}", fields.len()),
                ));
            }
            let bad = |what: &str| Error::parse(lineno, format!("invalid {what}"));
            Ok(GenerationStats {
                generation: fields[0].parse().map_err(|_| bad("generation"))?,
                basin_counts: fields[1..cols - 2]
                    .iter()
                    .map(|f| f.parse().map_err(|_| bad("basin count")))
                    .collect::<Result<_>>()?,
                best_fitness: fields[cols - 2].parse().map_err(|_| bad("best fitness"))?,
                evaluations_used: fields[cols - 1].parse().map_err(|_| bad("evaluations"))?,
            })
        })
        .collect()
}

pub fn export_sweep<W: Write>(
    reports: &BTreeMap<usize, ExperimentReport>,
    sink: &mut W,
) -> io::Result<()> {
    sink.write_all(b"population_size,runs,successes,success_rate,aes\n")?;
    for (n, r) in reports {
        writeln!(
            sink,
            "{n},{},{},{},{}",
            r.runs,
            r.successes,
            format_real(r.success_rate),
            opt_real(r.aes)
        )?;
    }
    Ok(())
}

pub fn export_report<W: Write>(report: &ExperimentReport, sink: &mut W) -> io::Result<()> {
    sink.write_all(b"runs,successes,success_rate,aes,mean_restarts\n")?;
    writeln!(
        sink,
        "{},{},{},{},{}",
        report.runs,
        report.successes,
        format_real(report.success_rate),
        opt_real(report.aes),
        opt_real(report.mean_restarts)
    )
}

pub fn export_runs<W: Write>(report: &ExperimentReport, sink: &mut W) -> io::Result<()> {
    sink.write_all(b"seed,outcome,success,evaluations,restarts\n")?;
    for r in &report.per_run {
        writeln!(
            sink,
            "{},{},{},{},{}",
            r.seed,
            r.outcome,
            r.success,
            r.evaluations,
            r.restarts.map(|x| x.to_string()).unwrap_or_default()
        )?;
    }
    Ok(())
}
