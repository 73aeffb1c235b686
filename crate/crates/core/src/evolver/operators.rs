//! Variation and selection operators.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::landscape::BitString;
use crate::rng::Rng;

use super::{CrossoverKind, CrossoverScheme, SelectionScheme};

/// `size` independent uniform strings of `length` bits.
pub fn init_population(size: usize, length: usize, rng: &mut Rng) -> Result<Vec<BitString>> {
    if size < 2 {
        return Err(Error::invalid("population size must be at least 2"));
    }
    (0..size).map(|_| BitString::random(length, rng)).collect()
}

/// Picks `fitness.len()` parents and returns their indices, in mating order.
pub fn select_parents(
    fitness: &[f64],
    scheme: SelectionScheme,
    rng: &mut Rng,
) -> Result<Vec<usize>> {
    if fitness.is_empty() {
        return Err(Error::invalid("cannot select from an empty population"));
    }
    match scheme {
        SelectionScheme::BinaryTournament => tournament(fitness, rng),
        SelectionScheme::FitnessProportional { scaling_factor } => {
            proportional(fitness, scaling_factor, rng)
        }
    }
}

// Two shuffled passes; each pass pairs neighbours and keeps the fitter one
// (the first of the pair on a tie). Every individual plays exactly twice.
fn tournament(fitness: &[f64], rng: &mut Rng) -> Result<Vec<usize>> {
    let n = fitness.len();
    if !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "tournament without replacement needs an even population, got {n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut winners = Vec::with_capacity(n);
    for _ in 0..2 {
        order.shuffle(rng);
        winners.extend(order.chunks_exact(2).map(|pair| {
            if fitness[pair[1]] > fitness[pair[0]] {
                pair[1]
            } else {
                pair[0]
            }
        }));
    }
    Ok(winners)
}

/// Linear fitness scaling `f' = a f + b` that keeps the mean fixed and maps
/// the maximum to `scaling_factor * mean`. Negative scaled values are floored
/// at zero. When every fitness equals the mean the weights are returned
/// unchanged.
pub fn scaled_weights(fitness: &[f64], scaling_factor: f64) -> Vec<f64> {
    let n = fitness.len() as f64;
    let mean = fitness.iter().sum::<f64>() / n;
    let max = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max <= mean {
        return fitness.to_vec();
    }
    let a = (scaling_factor - 1.0) * mean / (max - mean);
    let b = mean * (max - scaling_factor * mean) / (max - mean);
    fitness.iter().map(|&f| (a * f + b).max(0.0)).collect()
}

fn proportional(fitness: &[f64], scaling_factor: f64, rng: &mut Rng) -> Result<Vec<usize>> {
    if scaling_factor.is_nan() || scaling_factor < 1.0 {
        return Err(Error::invalid(format!(
            "scaling factor must be at least 1, got {scaling_factor}"
        )));
    }
    let weights = scaled_weights(fitness, scaling_factor);
    let n = fitness.len();
    match WeightedIndex::new(&weights) {
        Ok(dist) => Ok((0..n).map(|_| dist.sample(rng)).collect()),
        // all weights zero: fall back to uniform choice
        Err(_) => Ok((0..n).map(|_| rng.gen_range(0..n)).collect()),
    }
}

/// Mask with bits `[from, to)` set, laid out like `BitString` words.
fn range_mask(words: usize, from: usize, to: usize) -> Vec<u64> {
    (0..words)
        .map(|w| {
            let lo = w * 64;
            let hi = lo + 64;
            let s = from.clamp(lo, hi) - lo;
            let e = to.clamp(lo, hi) - lo;
            if e <= s {
                0
            } else if e - s == 64 {
                u64::MAX
            } else {
                ((1u64 << (e - s)) - 1) << s
            }
        })
        .collect()
}

fn swap_masked(a: &mut BitString, b: &mut BitString, mask: &[u64]) {
    let aw = a.words_mut();
    let bw = b.words_mut();
    for ((x, y), m) in aw.iter_mut().zip(bw.iter_mut()).zip(mask) {
        let diff = (*x ^ *y) & m;
        *x ^= diff;
        *y ^= diff;
    }
}

/// Swaps positions `[from, to)` between the two strings.
pub fn swap_segment(a: &mut BitString, b: &mut BitString, from: usize, to: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if from > to || to > a.len() {
        return Err(Error::invalid(format!(
            "segment [{from}, {to}) outside a {}-bit string",
            a.len()
        )));
    }
    let mask = range_mask(a.words().len(), from, to);
    swap_masked(a, b, &mask);
    Ok(())
}

/// Recombines two parents. With probability `1 - Pc` the parents are copied.
///
/// Cut points are the internal boundaries `1..L`: one-point swaps the tails
/// after one cut; two-point swaps the segment between two distinct cuts
/// (redrawing equal cuts); uniform swaps each position with probability 0.5.
/// Strings too short for the requested cuts (L = 1, or L = 2 for two-point)
/// degrade to the strongest cut that fits.
pub fn crossover(
    a: &BitString,
    b: &BitString,
    scheme: CrossoverScheme,
    rng: &mut Rng,
) -> Result<(BitString, BitString)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    if rng.gen::<f64>() >= scheme.probability {
        return Ok((x, y));
    }
    let len = a.len();
    let kind = match scheme.kind {
        CrossoverKind::TwoPoint if len < 3 => CrossoverKind::OnePoint,
        k => k,
    };
    match kind {
        _ if len < 2 => {}
        CrossoverKind::OnePoint => {
            let cut = rng.gen_range(1..len);
            swap_segment(&mut x, &mut y, cut, len)?;
        }
        CrossoverKind::TwoPoint => {
            let first = rng.gen_range(1..len);
            let second = loop {
                let c = rng.gen_range(1..len);
                if c != first {
                    break c;
                }
            };
            swap_segment(&mut x, &mut y, first.min(second), first.max(second))?;
        }
        CrossoverKind::Uniform => {
            let mask: Vec<u64> = (0..x.words().len()).map(|_| rng.gen::<u64>()).collect();
            swap_masked(&mut x, &mut y, &mask);
            // padding bits of both parents are zero, so swapping them is a no-op
        }
    }
    Ok((x, y))
}

/// Flips each bit independently with probability `rate`.
///
/// Flip positions are generated by geometric skips, which is distributed
/// exactly like one Bernoulli(rate) trial per bit but costs about
/// `1 + L * rate` draws per string.
pub fn mutate(x: &mut BitString, rate: f64, rng: &mut Rng) -> Result<()> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::invalid(format!("mutation rate must lie in [0, 1], got {rate}")));
    }
    if rate == 0.0 {
        return Ok(());
    }
    if rate == 1.0 {
        *x = x.complement();
        return Ok(());
    }
    let log_keep = (1.0 - rate).ln();
    let len = x.len();
    let mut pos = 0usize;
    loop {
        // u in (0, 1]
        let u = 1.0 - rng.gen::<f64>();
        let skip = (u.ln() / log_keep).floor();
        if skip >= (len - pos) as f64 {
            break;
        }
        pos += skip as usize;
        x.flip(pos);
        pos += 1;
        if pos >= len {
            break;
        }
    }
    Ok(())
}
