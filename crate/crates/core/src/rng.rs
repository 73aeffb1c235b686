//! Seeded random streams.
//!
//! Every stochastic component draws from [`Rng`], ChaCha with 8 rounds as
//! implemented by `rand_chacha` 0.3, seeded through `SeedableRng::seed_from_u64`.
//! ChaCha output is specified independently of platform and word size, so the
//! same seed reproduces the same stream everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream used by GA and climber runs. Instance generation uses stream 0, so
/// a run seed equal to the instance seed does not replay the peaks.
pub fn for_run(seed: u64) -> Rng {
    let mut rng = from_seed(seed);
    rng.set_stream(1);
    rng
}

/// Per-run seeds are `base_seed + run_index` (wrapping).
pub fn run_seed(base_seed: u64, run_index: usize) -> u64 {
    base_seed.wrapping_add(run_index as u64)
}
