//! Generational GA with basin-of-attraction telemetry.
//!
//! Each generation: select N parents, mate consecutive pairs, mutate, and
//! evaluate all N offspring, which replace the parents outright (no
//! elitism). After every generation the nearest peak of every individual is
//! tallied, which is what the early stop on wrong-basin convergence reads.

mod operators;

pub use operators::{crossover, init_population, mutate, scaled_weights, select_parents, swap_segment};

use crate::error::{Error, Result};
use crate::landscape::{BitString, EvalResult, ProblemInstance, SuccessRule};
use crate::rng::{self, Rng};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SelectionScheme {
    /// Binary tournament without replacement.
    BinaryTournament,
    /// Roulette wheel over linearly scaled fitness; see [`scaled_weights`].
    FitnessProportional { scaling_factor: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossoverKind {
    OnePoint,
    TwoPoint,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossoverScheme {
    pub kind: CrossoverKind,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub selection: SelectionScheme,
    pub crossover: CrossoverScheme,
    /// Per-bit flip probability.
    pub mutation_rate: f64,
    pub max_evaluations: u64,
    pub early_stop_on_wrong_basin: bool,
    /// Share of the population that must sit in one basin to count as
    /// converged. 1.0 means the whole population.
    pub convergence_fraction: f64,
    pub success_rule: SuccessRule,
    pub seed: u64,
}

/// Evaluation budget used by the experimental GA setup.
pub const DEFAULT_MAX_EVALUATIONS: u64 = 30_000;
pub const DEFAULT_SCALING_FACTOR: f64 = 2.0;

impl GaConfig {
    /// Two-point crossover (Pc = 0.7), binary tournament without
    /// replacement, Pm = 1/L, 30 000 evaluations.
    pub fn standard(length: usize, population_size: usize, seed: u64) -> Self {
        GaConfig {
            population_size,
            selection: SelectionScheme::BinaryTournament,
            crossover: CrossoverScheme {
                kind: CrossoverKind::TwoPoint,
                probability: 0.7,
            },
            mutation_rate: 1.0 / length as f64,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            early_stop_on_wrong_basin: false,
            convergence_fraction: 1.0,
            success_rule: SuccessRule::GlobalPeak,
            seed,
        }
    }

    /// Spears' setup: N = 100, scaled fitness-proportional selection,
    /// one-point crossover (Pc = 0.6), Pm = 0.001, 30 000 evaluations.
    pub fn spears(seed: u64) -> Self {
        GaConfig {
            population_size: 100,
            selection: SelectionScheme::FitnessProportional {
                scaling_factor: DEFAULT_SCALING_FACTOR,
            },
            crossover: CrossoverScheme {
                kind: CrossoverKind::OnePoint,
                probability: 0.6,
            },
            mutation_rate: 0.001,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            early_stop_on_wrong_basin: false,
            convergence_fraction: 1.0,
            success_rule: SuccessRule::GlobalPeak,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.population_size;
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "population size must be even and at least 2, got {n}"
            )));
        }
        if let SelectionScheme::FitnessProportional { scaling_factor } = self.selection {
            if scaling_factor.is_nan() || scaling_factor < 1.0 {
                return Err(Error::invalid(format!(
                    "scaling factor must be at least 1, got {scaling_factor}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.crossover.probability) {
            return Err(Error::invalid(format!(
                "crossover probability must lie in [0, 1], got {}",
                self.crossover.probability
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::invalid(format!(
                "mutation rate must lie in [0, 1], got {}",
                self.mutation_rate
            )));
        }
        if self.max_evaluations < n as u64 {
            return Err(Error::invalid(format!(
                "budget of {} evaluations cannot cover the initial population of {n}",
                self.max_evaluations
            )));
        }
        if !(self.convergence_fraction > 0.5 && self.convergence_fraction <= 1.0) {
            return Err(Error::invalid(format!(
                "convergence fraction must lie in (0.5, 1], got {}",
                self.convergence_fraction
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    /// Individuals whose nearest peak is each peak index.
    pub basin_counts: Vec<usize>,
    pub best_fitness: f64,
    /// Cumulative evaluations including this generation.
    pub evaluations_used: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    OptimumFound,
    BudgetExhausted,
    WrongBasinConverged,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::OptimumFound => "optimum_found",
            Outcome::BudgetExhausted => "budget_exhausted",
            Outcome::WrongBasinConverged => "wrong_basin_converged",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaRun {
    pub outcome: Outcome,
    pub evaluations_to_success: Option<u64>,
    pub converged_peak: Option<usize>,
    pub trace: Vec<GenerationStats>,
    pub config: GaConfig,
    pub instance_seed: u64,
}

impl GaRun {
    pub fn evaluations_used(&self) -> u64 {
        self.trace.last().map_or(0, |s| s.evaluations_used)
    }

    pub fn generations(&self) -> usize {
        self.trace.len()
    }
}

/// Peak holding the whole population, if any.
pub fn detect_basin_convergence(stats: &GenerationStats) -> Option<usize> {
    detect_basin_convergence_at(stats, 1.0)
}

/// Peak holding at least `ceil(fraction * N)` individuals, if any.
pub fn detect_basin_convergence_at(stats: &GenerationStats, fraction: f64) -> Option<usize> {
    let n: usize = stats.basin_counts.iter().sum();
    if n == 0 {
        return None;
    }
    let need = ((fraction * n as f64).ceil() as usize).clamp(1, n);
    stats.basin_counts.iter().position(|&c| c >= need)
}

/// Population plus the random stream that drives it.
pub struct GaState<'a> {
    instance: &'a ProblemInstance,
    config: &'a GaConfig,
    rng: Rng,
    population: Vec<BitString>,
    evals: Vec<EvalResult>,
    generation: usize,
    evaluations_used: u64,
}

impl<'a> GaState<'a> {
    /// Draws and evaluates the initial population (generation 0).
    pub fn new(config: &'a GaConfig, instance: &'a ProblemInstance) -> Result<Self> {
        config.validate()?;
        let mut rng = rng::for_run(config.seed);
        let population = init_population(config.population_size, instance.length(), &mut rng)?;
        let evals = population
            .iter()
            .map(|x| instance.evaluate_unchecked(x))
            .collect();
        Ok(GaState {
            instance,
            config,
            rng,
            population,
            evals,
            generation: 0,
            evaluations_used: config.population_size as u64,
        })
    }

    pub fn population(&self) -> &[BitString] {
        &self.population
    }

    pub fn evaluations(&self) -> &[EvalResult] {
        &self.evals
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn evaluations_used(&self) -> u64 {
        self.evaluations_used
    }

    pub fn stats(&self) -> GenerationStats {
        let mut basin_counts = vec![0; self.instance.peak_count()];
        let mut best_fitness = 0.0f64;
        for e in &self.evals {
            basin_counts[e.nearest_peak] += 1;
            best_fitness = best_fitness.max(e.fitness);
        }
        GenerationStats {
            generation: self.generation,
            basin_counts,
            best_fitness,
            evaluations_used: self.evaluations_used,
        }
    }

    pub fn solved(&self) -> bool {
        self.evals
            .iter()
            .any(|e| self.instance.is_solved(e, self.config.success_rule))
    }

    /// One generation: selection, pairwise crossover, mutation, and a full
    /// re-evaluation of the offspring.
    pub fn step(&mut self) -> Result<()> {
        let fitness: Vec<f64> = self.evals.iter().map(|e| e.fitness).collect();
        let parents = select_parents(&fitness, self.config.selection, &mut self.rng)?;
        let mut next = Vec::with_capacity(self.population.len());
        for pair in parents.chunks_exact(2) {
            let (mut a, mut b) = crossover(
                &self.population[pair[0]],
                &self.population[pair[1]],
                self.config.crossover,
                &mut self.rng,
            )?;
            mutate(&mut a, self.config.mutation_rate, &mut self.rng)?;
            mutate(&mut b, self.config.mutation_rate, &mut self.rng)?;
            next.push(a);
            next.push(b);
        }
        self.evals.clear();
        self.evals
            .extend(next.iter().map(|x| self.instance.evaluate_unchecked(x)));
        self.population = next;
        self.generation += 1;
        self.evaluations_used += self.population.len() as u64;
        Ok(())
    }
}

/// Runs the GA until the optimum appears, the population collapses onto a
/// non-best basin (if early stop is on), or another generation would exceed
/// the evaluation budget.
pub fn run_ga(config: &GaConfig, instance: &ProblemInstance) -> Result<GaRun> {
    let mut state = GaState::new(config, instance)?;
    let n = config.population_size as u64;
    let top = instance.heights()[0];
    let mut trace = Vec::new();
    loop {
        let stats = state.stats();
        let converged = detect_basin_convergence_at(&stats, config.convergence_fraction);
        trace.push(stats);
        if state.solved() {
            return Ok(GaRun {
                outcome: Outcome::OptimumFound,
                evaluations_to_success: Some(state.evaluations_used()),
                converged_peak: converged,
                trace,
                config: config.clone(),
                instance_seed: instance.seed(),
            });
        }
        if config.early_stop_on_wrong_basin {
            if let Some(j) = converged {
                let wrong = match config.success_rule {
                    SuccessRule::GlobalPeak => j != 0,
                    SuccessRule::AnyTopPeak => instance.heights()[j] < top,
                };
                if wrong {
                    return Ok(GaRun {
                        outcome: Outcome::WrongBasinConverged,
                        evaluations_to_success: None,
                        converged_peak: Some(j),
                        trace,
                        config: config.clone(),
                        instance_seed: instance.seed(),
                    });
                }
            }
        }
        if state.evaluations_used() + n > config.max_evaluations {
            return Ok(GaRun {
                outcome: Outcome::BudgetExhausted,
                evaluations_to_success: None,
                converged_peak: converged,
                trace,
                config: config.clone(),
                instance_seed: instance.seed(),
            });
        }
        state.step()?;
    }
}
