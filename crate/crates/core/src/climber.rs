//! Multi-restart next-ascent hillclimbing.
//!
//! A climb draws one random permutation of bit positions and walks it
//! cyclically, flipping one bit per step and keeping the flip only if fitness
//! strictly rises. The climb ends once `L` consecutive flips are rejected,
//! i.e. no single-bit neighbour is better. Every evaluated string, including
//! the random start, costs one evaluation.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::landscape::{BitString, EvalResult, ProblemInstance, SuccessRule};
use crate::rng::{self, Rng};

#[derive(Clone, Debug, PartialEq)]
pub struct ClimbConfig {
    pub max_evaluations: u64,
    pub success_rule: SuccessRule,
    pub seed: u64,
}

pub const DEFAULT_CLIMB_EVALUATIONS: u64 = 1_000_000;

impl ClimbConfig {
    pub fn new(max_evaluations: u64, seed: u64) -> Self {
        ClimbConfig {
            max_evaluations,
            success_rule: SuccessRule::GlobalPeak,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_evaluations == 0 {
            return Err(Error::invalid("climber budget must be at least 1 evaluation"));
        }
        Ok(())
    }
}

/// Result of a single climb.
#[derive(Clone, Debug, PartialEq)]
pub struct ClimbResult {
    pub local_optimum: BitString,
    pub eval: EvalResult,
    /// Includes the evaluation of the starting string.
    pub evaluations: u64,
    pub accepted_flips: usize,
    /// False when the budget ran out before a full improvement-free pass.
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClimbOutcome {
    pub success: bool,
    pub evaluations_used: u64,
    /// Climbs that finished at a local optimum other than the target.
    pub restarts: u64,
    pub best_fitness: f64,
    pub seed: u64,
}

pub fn next_ascent_climb(
    instance: &ProblemInstance,
    start: BitString,
    rng: &mut Rng,
    budget: u64,
) -> Result<ClimbResult> {
    if budget == 0 {
        return Err(Error::invalid("climb budget must be at least 1 evaluation"));
    }
    let mut current = start;
    let mut eval = instance.evaluate(&current)?;
    let len = current.len();
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);

    let mut evaluations = 1u64;
    let mut accepted_flips = 0;
    let mut rejected_in_row = 0;
    let mut cursor = 0;
    while rejected_in_row < len && evaluations < budget {
        let bit = order[cursor];
        cursor = (cursor + 1) % len;
        current.flip(bit);
        let candidate = instance.evaluate_unchecked(&current);
        evaluations += 1;
        if candidate.fitness > eval.fitness {
            eval = candidate;
            accepted_flips += 1;
            rejected_in_row = 0;
        } else {
            current.flip(bit);
            rejected_in_row += 1;
        }
    }
    Ok(ClimbResult {
        local_optimum: current,
        eval,
        evaluations,
        accepted_flips,
        converged: rejected_in_row == len,
    })
}

/// Climbs from fresh uniform starts until a climb ends on the target peak or
/// the budget is spent.
pub fn multi_restart_climb(instance: &ProblemInstance, config: &ClimbConfig) -> Result<ClimbOutcome> {
    config.validate()?;
    let mut rng = rng::for_run(config.seed);
    let mut used = 0u64;
    let mut restarts = 0u64;
    let mut best_fitness = 0.0f64;
    while used < config.max_evaluations {
        let start = BitString::random(instance.length(), &mut rng)?;
        let climb = next_ascent_climb(instance, start, &mut rng, config.max_evaluations - used)?;
        used += climb.evaluations;
        best_fitness = best_fitness.max(climb.eval.fitness);
        if instance.is_solved(&climb.eval, config.success_rule) {
            return Ok(ClimbOutcome {
                success: true,
                evaluations_used: used,
                restarts,
                best_fitness,
                seed: config.seed,
            });
        }
        if climb.converged {
            restarts += 1;
        }
    }
    Ok(ClimbOutcome {
        success: false,
        evaluations_used: used,
        restarts,
        best_fitness,
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{generate_instance, HeightScheme};

    #[test]
    fn climb_from_the_optimum_costs_one_pass() {
        let inst = generate_instance(5, 40, HeightScheme::Linear { h_min: 0.5 }, 2).unwrap();
        let mut r = rng::from_seed(1);
        let c = next_ascent_climb(&inst, inst.peaks()[0].clone(), &mut r, 10_000).unwrap();
        assert_eq!(c.local_optimum, inst.peaks()[0]);
        assert_eq!(c.evaluations, 41);
        assert_eq!(c.accepted_flips, 0);
        assert!(c.converged);
    }

    #[test]
    fn zero_budget_rejected() {
        let inst = generate_instance(1, 8, HeightScheme::Equal, 0).unwrap();
        let mut r = rng::from_seed(1);
        assert!(next_ascent_climb(&inst, inst.peaks()[0].clone(), &mut r, 0).is_err());
        assert!(multi_restart_climb(&inst, &ClimbConfig::new(0, 1)).is_err());
    }

    #[test]
    fn budget_cut_marks_climb_unconverged() {
        let inst = generate_instance(1, 64, HeightScheme::Equal, 0).unwrap();
        let mut r = rng::from_seed(3);
        let start = inst.peaks()[0].complement();
        let c = next_ascent_climb(&inst, start, &mut r, 10).unwrap();
        assert_eq!(c.evaluations, 10);
        assert!(!c.converged);
    }

    #[test]
    fn single_peak_needs_no_restart() {
        let inst = generate_instance(1, 50, HeightScheme::Equal, 4).unwrap();
        let out = multi_restart_climb(&inst, &ClimbConfig::new(100_000, 8)).unwrap();
        assert!(out.success);
        assert_eq!(out.restarts, 0);
        assert_eq!(out.best_fitness, 1.0);
    }

    #[test]
    fn exhausted_budget_is_a_failure() {
        let inst = generate_instance(100, 100, HeightScheme::Linear { h_min: 0.5 }, 4).unwrap();
        let out = multi_restart_climb(&inst, &ClimbConfig::new(150, 8)).unwrap();
        assert!(!out.success);
        assert_eq!(out.evaluations_used, 150);
        assert_eq!(out.restarts, 0);
    }
}
