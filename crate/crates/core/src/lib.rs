//! Peak-landscape laboratory.
//!
//! Generates instances of the multimodal problem generator (random peaks in
//! Hamming space, fitness scaled by the height of the nearest peak), and
//! studies how two kinds of search behave on them:
//!
//! * [`evolver`]: a generational GA with per-generation basin telemetry and
//!   an early stop when the whole population settles on a non-best peak.
//! * [`climber`]: multi-restart next-ascent hillclimbing.
//!
//! [`telemetry`] aggregates success rate (SR) and average evaluations to
//! solution (AES) and writes the CSV schemas; [`harness`] drives experiments
//! from config files or named presets.

pub mod climber;
pub mod error;
pub mod evolver;
pub mod harness;
pub mod landscape;
pub mod rng;
pub mod telemetry;

pub use climber::{multi_restart_climb, next_ascent_climb, ClimbConfig, ClimbOutcome, ClimbResult};
pub use error::{Error, Result};
pub use evolver::{
    detect_basin_convergence, run_ga, CrossoverKind, CrossoverScheme, GaConfig, GaRun,
    GenerationStats, Outcome, SelectionScheme,
};
pub use landscape::{
    assign_heights, generate_instance, hamming, parse_instance, serialize_instance, BitString,
    EvalResult, HeightScheme, ProblemInstance, SuccessRule,
};
pub use telemetry::ExperimentReport;
