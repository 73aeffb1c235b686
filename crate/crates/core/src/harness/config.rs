//! Experiment config files.
//!
//! One `section.key = value` assignment per line. Blank lines and lines
//! starting with `#` are ignored; whitespace around keys and values is
//! trimmed; a key may appear only once. Recognised keys:
//!
//! ```text
//! instance.file          path to an instance file (excludes the keys below)
//! instance.peaks         P
//! instance.length        L
//! instance.scheme        equal | linear
//! instance.h_min         lowest height, linear scheme only (default 0.5)
//! instance.seed          generator seed (default 0)
//!
//! algorithm.kind         ga | climber
//!
//! ga.population_size     even N (default 100)
//! ga.selection           tournament | proportional (default tournament)
//! ga.scaling_factor      proportional selection only (default 2)
//! ga.crossover           one_point | two_point | uniform (default two_point)
//! ga.crossover_rate      Pc (default 0.7)
//! ga.mutation_rate       Pm, a number or `1/L` (default 1/L)
//! ga.max_evaluations     budget (default 30000)
//! ga.early_stop          true | false (default false)
//! ga.convergence_fraction  (default 1)
//! ga.success_rule        global_peak | any_top_peak (default global_peak)
//!
//! climber.max_evaluations  budget (default 1000000)
//! climber.success_rule     global_peak | any_top_peak
//!
//! experiment.repetitions   runs (default 1)
//! experiment.base_seed     run i uses base_seed + i (default 0)
//! experiment.output_dir    where reports go (default `out`)
//! ```
//!
//! Manifests written by the harness use the same grammar, plus keys under
//! `preset.` and `runs.` that the parser accepts and ignores.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::climber::{ClimbConfig, DEFAULT_CLIMB_EVALUATIONS};
use crate::error::{Error, Result};
use crate::evolver::{CrossoverKind, CrossoverScheme, GaConfig, SelectionScheme};
use crate::landscape::{generate_instance, parse_instance, HeightScheme, ProblemInstance, SuccessRule};

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    Inline {
        peaks: usize,
        length: usize,
        scheme: HeightScheme,
        seed: u64,
    },
    File(PathBuf),
}

impl InstanceSource {
    pub fn load(&self) -> Result<ProblemInstance> {
        match self {
            InstanceSource::Inline {
                peaks,
                length,
                scheme,
                seed,
            } => generate_instance(*peaks, *length, *scheme, *seed),
            InstanceSource::File(path) => parse_instance(&std::fs::read_to_string(path)?),
        }
    }
}

/// Algorithm settings; the per-run seed is filled in by the harness.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgorithmSpec {
    Ga(GaConfig),
    Climber(ClimbConfig),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub instance: InstanceSource,
    pub algorithm: AlgorithmSpec,
    pub repetitions: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
}

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }

    fn parse<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::parse(line, format!("invalid value {v:?} for {key}"))),
        }
    }

    fn or<T: std::str::FromStr>(&mut self, key: &str, default: T) -> Result<T> {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    fn require<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        self.parse(key)?
            .ok_or_else(|| Error::parse(0, format!("missing required key {key}")))
    }

    fn choice<T: Copy>(&mut self, key: &str, options: &[(&str, T)], default: T) -> Result<T> {
        match self.take(key) {
            None => Ok(default),
            Some((line, v)) => options
                .iter()
                .find(|(name, _)| *name == v)
                .map(|(_, t)| *t)
                .ok_or_else(|| {
                    let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                    Error::parse(line, format!("{key} must be one of {}, got {v:?}", names.join(", ")))
                }),
        }
    }
}

const RULES: [(&str, SuccessRule); 2] = [
    ("global_peak", SuccessRule::GlobalPeak),
    ("any_top_peak", SuccessRule::AnyTopPeak),
];

const KNOWN_KEYS: &[&str] = &[
    "instance.file",
    "instance.peaks",
    "instance.length",
    "instance.scheme",
    "instance.h_min",
    "instance.seed",
    "algorithm.kind",
    "ga.population_size",
    "ga.selection",
    "ga.scaling_factor",
    "ga.crossover",
    "ga.crossover_rate",
    "ga.mutation_rate",
    "ga.max_evaluations",
    "ga.early_stop",
    "ga.convergence_fraction",
    "ga.success_rule",
    "climber.max_evaluations",
    "climber.success_rule",
    "experiment.repetitions",
    "experiment.base_seed",
    "experiment.output_dir",
];

/// Parses config text. Relative `instance.file` paths resolve against
/// `base_dir`.
pub fn parse_experiment(text: &str, base_dir: &Path) -> Result<ExperimentSpec> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected `section.key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        match key.split_once('.') {
            Some((s, k)) if !s.is_empty() && !k.is_empty() && !k.contains('.') => {}
            _ => return Err(Error::parse(line, format!("malformed key {key:?}"))),
        }
        if value.is_empty() {
            return Err(Error::parse(line, format!("empty value for {key}")));
        }
        if let Some((first, _)) = map.insert(key.to_string(), (line, value.to_string())) {
            return Err(Error::parse(line, format!("{key} already set on line {first}")));
        }
    }
    // Bookkeeping keys written into manifests.
    map.retain(|k, _| !k.starts_with("preset.") && !k.starts_with("runs."));
    // Catch typos before complaining about missing keys.
    if let Some((key, (line, _))) = map
        .iter()
        .filter(|(k, _)| !KNOWN_KEYS.contains(&k.as_str()))
        .min_by_key(|(_, (line, _))| *line)
    {
        return Err(Error::parse(*line, format!("unknown key {key}")));
    }
    let mut e = Entries { map };

    let instance = if let Some((_, path)) = e.take("instance.file") {
        for k in ["instance.peaks", "instance.length", "instance.scheme", "instance.h_min", "instance.seed"] {
            if let Some((line, _)) = e.take(k) {
                return Err(Error::parse(line, format!("{k} conflicts with instance.file")));
            }
        }
        InstanceSource::File(base_dir.join(path))
    } else {
        let peaks = e.require("instance.peaks")?;
        let length = e.require("instance.length")?;
        let linear = e.choice("instance.scheme", &[("equal", false), ("linear", true)], true)?;
        let h_min: Option<f64> = e.parse("instance.h_min")?;
        let scheme = if linear {
            HeightScheme::Linear {
                h_min: h_min.unwrap_or(0.5),
            }
        } else if h_min.is_some() {
            return Err(Error::parse(0, "instance.h_min only applies to the linear scheme"));
        } else {
            HeightScheme::Equal
        };
        InstanceSource::Inline {
            peaks,
            length,
            scheme,
            seed: e.or("instance.seed", 0)?,
        }
    };

    let kind = e
        .take("algorithm.kind")
        .ok_or_else(|| Error::parse(0, "missing required key algorithm.kind"))?;
    let algorithm = match kind.1.as_str() {
        "ga" => AlgorithmSpec::Ga(parse_ga(&mut e, &instance)?),
        "climber" => AlgorithmSpec::Climber(ClimbConfig {
            max_evaluations: e.or("climber.max_evaluations", DEFAULT_CLIMB_EVALUATIONS)?,
            success_rule: e.choice("climber.success_rule", &RULES, SuccessRule::GlobalPeak)?,
            seed: 0,
        }),
        other => {
            return Err(Error::parse(
                kind.0,
                format!("algorithm.kind must be ga or climber, got {other:?}"),
            ))
        }
    };

    let spec = ExperimentSpec {
        instance,
        algorithm,
        repetitions: e.or("experiment.repetitions", 1)?,
        base_seed: e.or("experiment.base_seed", 0)?,
        output_dir: base_dir.join(e.take("experiment.output_dir").map_or("out".into(), |v| v.1)),
    };
    if let Some((key, (line, _))) = e.map.into_iter().next() {
        return Err(Error::parse(line, format!("{key} does not apply to this algorithm")));
    }
    if spec.repetitions == 0 {
        return Err(Error::parse(0, "experiment.repetitions must be at least 1"));
    }
    match &spec.algorithm {
        AlgorithmSpec::Ga(c) => c.validate()?,
        AlgorithmSpec::Climber(c) => c.validate()?,
    }
    Ok(spec)
}

fn parse_ga(e: &mut Entries, instance: &InstanceSource) -> Result<GaConfig> {
    let selection = match e.choice("ga.selection", &[("tournament", false), ("proportional", true)], false)? {
        false => {
            if let Some((line, _)) = e.take("ga.scaling_factor") {
                return Err(Error::parse(line, "ga.scaling_factor needs proportional selection"));
            }
            SelectionScheme::BinaryTournament
        }
        true => SelectionScheme::FitnessProportional {
            scaling_factor: e.or("ga.scaling_factor", crate::evolver::DEFAULT_SCALING_FACTOR)?,
        },
    };
    let kind = e.choice(
        "ga.crossover",
        &[
            ("one_point", CrossoverKind::OnePoint),
            ("two_point", CrossoverKind::TwoPoint),
            ("uniform", CrossoverKind::Uniform),
        ],
        CrossoverKind::TwoPoint,
    )?;
    let mutation_rate = match e.take("ga.mutation_rate") {
        Some((_, v)) if v == "1/L" => None,
        Some((line, v)) => Some(
            v.parse::<f64>()
                .map_err(|_| Error::parse(line, format!("invalid value {v:?} for ga.mutation_rate")))?,
        ),
        None => None,
    };
    let mutation_rate = match mutation_rate {
        Some(r) => r,
        None => {
            let length = match instance {
                InstanceSource::Inline { length, .. } => *length,
                InstanceSource::File(p) => InstanceSource::File(p.clone()).load()?.length(),
            };
            1.0 / length as f64
        }
    };
    Ok(GaConfig {
        population_size: e.or("ga.population_size", 100)?,
        selection,
        crossover: CrossoverScheme {
            kind,
            probability: e.or("ga.crossover_rate", 0.7)?,
        },
        mutation_rate,
        max_evaluations: e.or("ga.max_evaluations", crate::evolver::DEFAULT_MAX_EVALUATIONS)?,
        early_stop_on_wrong_basin: e.or("ga.early_stop", false)?,
        convergence_fraction: e.or("ga.convergence_fraction", 1.0)?,
        success_rule: e.choice("ga.success_rule", &RULES, SuccessRule::GlobalPeak)?,
        seed: 0,
    })
}
