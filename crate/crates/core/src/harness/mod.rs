//! Experiment driver: config-file runs, named reproductions, and the
//! brute-force self-check behind `peaklab verify`.
//!
//! Output directory layout: `manifest.txt` (config grammar, enough to re-run),
//! `instance.txt`, then `trace_*.csv` for single-run presets or `report.csv`
//! plus per-run `runs*.csv` for repeated experiments.

mod config;
mod presets;
mod verify;

pub use config::{parse_experiment, AlgorithmSpec, ExperimentSpec, InstanceSource};
pub use presets::{
    run_preset, PresetName, PresetOptions, PresetOutput, FIG4_GENERATIONS, FIG4_POPULATION_SIZES,
};
pub use verify::{verify_oracle, VerifyReport};

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::climber::{multi_restart_climb, ClimbConfig, ClimbOutcome};
use crate::error::Result;
use crate::evolver::{run_ga, CrossoverKind, GaConfig, GaRun, SelectionScheme};
use crate::landscape::{serialize_instance, HeightScheme, ProblemInstance, SuccessRule};
use crate::rng::run_seed;
use crate::telemetry::{self, ExperimentReport};

pub fn run_seeds(base_seed: u64, repetitions: usize) -> Vec<u64> {
    (0..repetitions).map(|i| run_seed(base_seed, i)).collect()
}

/// Runs the GA once per seed. Results come back in seed-list order
/// regardless of scheduling.
pub fn ga_batch(config: &GaConfig, instance: &ProblemInstance, seeds: &[u64]) -> Result<Vec<GaRun>> {
    seeds
        .par_iter()
        .map(|&seed| run_ga(&GaConfig { seed, ..config.clone() }, instance))
        .collect()
}

pub fn climber_batch(
    config: &ClimbConfig,
    instance: &ProblemInstance,
    seeds: &[u64],
) -> Result<Vec<ClimbOutcome>> {
    seeds
        .par_iter()
        .map(|&seed| multi_restart_climb(instance, &ClimbConfig { seed, ..config.clone() }))
        .collect()
}

/// Everything `run` produced, kept in memory for callers that want it.
pub enum ExperimentOutput {
    Ga { report: ExperimentReport, runs: Vec<GaRun> },
    Climber { report: ExperimentReport },
}

/// Executes a parsed experiment and writes its output directory.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let instance = spec.instance.load()?;
    let seeds = run_seeds(spec.base_seed, spec.repetitions);
    let dir = &spec.output_dir;
    fs::create_dir_all(dir)?;
    write_instance(dir, &instance)?;

    let mut manifest = Manifest::default();
    manifest.instance(&instance);
    let out = match &spec.algorithm {
        AlgorithmSpec::Ga(cfg) => {
            manifest.ga(cfg);
            let runs = ga_batch(cfg, &instance, &seeds)?;
            let report = telemetry::aggregate(&runs)?;
            for (i, run) in runs.iter().enumerate() {
                write_with(&dir.join(format!("trace_{i:03}.csv")), |w| telemetry::export_trace(run, w))?;
            }
            ExperimentOutput::Ga { report, runs }
        }
        AlgorithmSpec::Climber(cfg) => {
            manifest.climber(cfg);
            let runs = climber_batch(cfg, &instance, &seeds)?;
            ExperimentOutput::Climber {
                report: telemetry::aggregate(&runs)?,
            }
        }
    };
    let report = match &out {
        ExperimentOutput::Ga { report, .. } | ExperimentOutput::Climber { report } => report,
    };
    write_with(&dir.join("report.csv"), |w| telemetry::export_report(report, w))?;
    write_with(&dir.join("runs.csv"), |w| telemetry::export_runs(report, w))?;
    manifest.experiment(spec.repetitions, spec.base_seed, &seeds);
    manifest.write(dir)?;
    Ok(out)
}

pub(crate) fn write_with<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
{
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub(crate) fn write_instance(dir: &Path, instance: &ProblemInstance) -> Result<()> {
    fs::write(dir.join("instance.txt"), serialize_instance(instance))?;
    Ok(())
}

/// Manifest text in the config grammar.
#[derive(Default)]
pub(crate) struct Manifest {
    text: String,
}

fn rule_name(rule: SuccessRule) -> &'static str {
    match rule {
        SuccessRule::GlobalPeak => "global_peak",
        SuccessRule::AnyTopPeak => "any_top_peak",
    }
}

impl Manifest {
    pub(crate) fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{key} = {value}");
    }

    pub(crate) fn comment(&mut self, text: &str) {
        let _ = writeln!(self.text, "# {text}");
    }

    pub(crate) fn instance(&mut self, inst: &ProblemInstance) {
        self.line("instance.peaks", inst.peak_count());
        self.line("instance.length", inst.length());
        self.line("instance.scheme", inst.scheme().name());
        if let HeightScheme::Linear { h_min } = inst.scheme() {
            self.line("instance.h_min", h_min);
        }
        self.line("instance.seed", inst.seed());
    }

    pub(crate) fn ga(&mut self, c: &GaConfig) {
        self.line("algorithm.kind", "ga");
        self.line("ga.population_size", c.population_size);
        match c.selection {
            SelectionScheme::BinaryTournament => self.line("ga.selection", "tournament"),
            SelectionScheme::FitnessProportional { scaling_factor } => {
                self.line("ga.selection", "proportional");
                self.line("ga.scaling_factor", scaling_factor);
            }
        }
        let kind = match c.crossover.kind {
            CrossoverKind::OnePoint => "one_point",
            CrossoverKind::TwoPoint => "two_point",
            CrossoverKind::Uniform => "uniform",
        };
        self.line("ga.crossover", kind);
        self.line("ga.crossover_rate", c.crossover.probability);
        self.line("ga.mutation_rate", c.mutation_rate);
        self.line("ga.max_evaluations", c.max_evaluations);
        self.line("ga.early_stop", c.early_stop_on_wrong_basin);
        self.line("ga.convergence_fraction", c.convergence_fraction);
        self.line("ga.success_rule", rule_name(c.success_rule));
    }

    pub(crate) fn climber(&mut self, c: &ClimbConfig) {
        self.line("algorithm.kind", "climber");
        self.line("climber.max_evaluations", c.max_evaluations);
        self.line("climber.success_rule", rule_name(c.success_rule));
    }

    pub(crate) fn experiment(&mut self, repetitions: usize, base_seed: u64, seeds: &[u64]) {
        self.line("experiment.repetitions", repetitions);
        self.line("experiment.base_seed", base_seed);
        let list: Vec<String> = seeds.iter().map(u64::to_string).collect();
        self.line("runs.seeds", list.join(","));
    }

    pub(crate) fn write(&self, dir: &Path) -> Result<()> {
        fs::write(dir.join("manifest.txt"), &self.text)?;
        Ok(())
    }
}
