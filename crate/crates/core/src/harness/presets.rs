//! Named reproductions of the basin-convergence, population-sizing and
//! hillclimber experiments.
//!
//! All presets use L = 100 and linear heights down to `h_min` (0.5 unless
//! overridden). The GA setup is [`GaConfig::standard`].
//!
//! * `fig1`, `fig2`, `fig3`: one GA run with N = 100 on 2, 10 and 100 peaks,
//!   30 000-evaluation budget, no early stop; writes `trace_<name>.csv`.
//! * `fig4`: repeated GA runs at N = 100, 200, ..., 51200 on one 100-peak
//!   instance, early stop on wrong-basin convergence, budget of
//!   [`FIG4_GENERATIONS`] generations; writes the sweep as `report.csv`
//!   and `runs_<N>.csv` per size.
//! * `table1`: repeated multi-restart hillclimbing on one 100-peak instance
//!   with a 10^6-evaluation budget; writes `report.csv` and `runs.csv`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use crate::climber::{ClimbConfig, DEFAULT_CLIMB_EVALUATIONS};
use crate::error::{Error, Result};
use crate::evolver::{GaConfig, GaRun};
use crate::landscape::{generate_instance, HeightScheme, ProblemInstance};
use crate::telemetry::{self, ExperimentReport};

use super::{climber_batch, ga_batch, run_seeds, write_instance, write_with, Manifest};

pub const FIG4_POPULATION_SIZES: [usize; 10] =
    [100, 200, 400, 800, 1600, 3200, 6400, 12800, 25600, 51200];

/// fig4 budget in generations (evaluations = generations * N); matches the
/// 30 000-evaluation budget at N = 100.
pub const FIG4_GENERATIONS: u64 = 300;

const LENGTH: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Table1,
}

impl PresetName {
    pub const ALL: [PresetName; 5] = [
        PresetName::Fig1,
        PresetName::Fig2,
        PresetName::Fig3,
        PresetName::Fig4,
        PresetName::Table1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PresetName::Fig1 => "fig1",
            PresetName::Fig2 => "fig2",
            PresetName::Fig3 => "fig3",
            PresetName::Fig4 => "fig4",
            PresetName::Table1 => "table1",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown preset {s:?}; expected one of fig1, fig2, fig3, fig4, table1"
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PresetOptions {
    pub instance_seed: u64,
    /// GA/climber seed; repeated presets use `base_seed + run_index`.
    pub base_seed: u64,
    pub h_min: f64,
    /// Overrides the 100 repetitions of fig4 and table1.
    pub runs: Option<usize>,
    /// fig4 only.
    pub early_stop: bool,
    pub output_dir: PathBuf,
}

impl Default for PresetOptions {
    fn default() -> Self {
        PresetOptions {
            instance_seed: 1,
            base_seed: 1000,
            h_min: 0.5,
            runs: None,
            early_stop: true,
            output_dir: PathBuf::from("out"),
        }
    }
}

pub enum PresetOutput {
    Trace(GaRun),
    Sweep(BTreeMap<usize, ExperimentReport>),
    Climb(ExperimentReport),
}

fn instance(peaks: usize, opts: &PresetOptions) -> Result<ProblemInstance> {
    generate_instance(
        peaks,
        LENGTH,
        HeightScheme::Linear { h_min: opts.h_min },
        opts.instance_seed,
    )
}

/// Runs a preset and writes its files into `opts.output_dir`.
pub fn run_preset(name: PresetName, opts: &PresetOptions) -> Result<PresetOutput> {
    let repetitions = opts.runs.unwrap_or(100);
    if repetitions == 0 {
        return Err(Error::invalid("a preset needs at least one run"));
    }
    let dir = &opts.output_dir;
    fs::create_dir_all(dir)?;
    let mut manifest = Manifest::default();
    manifest.line("preset.name", name);

    let out = match name {
        PresetName::Fig1 | PresetName::Fig2 | PresetName::Fig3 => {
            let peaks = match name {
                PresetName::Fig1 => 2,
                PresetName::Fig2 => 10,
                _ => 100,
            };
            let inst = instance(peaks, opts)?;
            let cfg = GaConfig::standard(LENGTH, 100, opts.base_seed);
            let run = ga_batch(&cfg, &inst, &[opts.base_seed])?.remove(0);
            write_instance(dir, &inst)?;
            write_with(&dir.join(format!("trace_{name}.csv")), |w| {
                telemetry::export_trace(&run, w)
            })?;
            manifest.instance(&inst);
            manifest.ga(&cfg);
            manifest.experiment(1, opts.base_seed, &[opts.base_seed]);
            PresetOutput::Trace(run)
        }
        PresetName::Fig4 => {
            let inst = instance(100, opts)?;
            write_instance(dir, &inst)?;
            manifest.instance(&inst);
            let seeds = run_seeds(opts.base_seed, repetitions);
            let mut sweep = BTreeMap::new();
            for (i, &n) in FIG4_POPULATION_SIZES.iter().enumerate() {
                let cfg = GaConfig {
                    early_stop_on_wrong_basin: opts.early_stop,
                    max_evaluations: FIG4_GENERATIONS * n as u64,
                    ..GaConfig::standard(LENGTH, n, opts.base_seed)
                };
                if i == 0 {
                    manifest.comment("ga settings for the first size");
                    manifest.ga(&cfg);
                }
                let runs = ga_batch(&cfg, &inst, &seeds)?;
                let report = telemetry::aggregate(&runs)?;
                write_with(&dir.join(format!("runs_{n}.csv")), |w| {
                    telemetry::export_runs(&report, w)
                })?;
                sweep.insert(n, report);
            }
            let sizes: Vec<String> = FIG4_POPULATION_SIZES.iter().map(usize::to_string).collect();
            manifest.line("preset.population_sizes", sizes.join(","));
            manifest.comment("each size N gets ga.max_evaluations = preset.generations * N");
            manifest.line("preset.generations", FIG4_GENERATIONS);
            manifest.experiment(repetitions, opts.base_seed, &seeds);
            write_with(&dir.join("report.csv"), |w| telemetry::export_sweep(&sweep, w))?;
            PresetOutput::Sweep(sweep)
        }
        PresetName::Table1 => {
            let inst = instance(100, opts)?;
            write_instance(dir, &inst)?;
            let cfg = ClimbConfig::new(DEFAULT_CLIMB_EVALUATIONS, opts.base_seed);
            let seeds = run_seeds(opts.base_seed, repetitions);
            let runs = climber_batch(&cfg, &inst, &seeds)?;
            let report = telemetry::aggregate(&runs)?;
            write_with(&dir.join("report.csv"), |w| telemetry::export_report(&report, w))?;
            write_with(&dir.join("runs.csv"), |w| telemetry::export_runs(&report, w))?;
            manifest.instance(&inst);
            manifest.climber(&cfg);
            manifest.experiment(repetitions, opts.base_seed, &seeds);
            PresetOutput::Climb(report)
        }
    };
    manifest.write(dir)?;
    Ok(out)
}
