use peaklab::climber::{multi_restart_climb, next_ascent_climb, ClimbConfig};
use peaklab::landscape::{generate_instance, hamming, BitString, HeightScheme};
use peaklab::rng;
use proptest::prelude::*;

const LINEAR: HeightScheme = HeightScheme::Linear { h_min: 0.5 };

fn all_strings(len: usize) -> impl Iterator<Item = BitString> {
    (0u32..1 << len).map(move |v| {
        let bits: Vec<u8> = (0..len).map(|i| ((v >> i) & 1) as u8).collect();
        BitString::from_bits(&bits).unwrap()
    })
}

#[test]
fn single_peak_is_reached_from_every_start() {
    for len in 1..=10 {
        let inst = generate_instance(1, len, HeightScheme::Equal, len as u64).unwrap();
        let peak = &inst.peaks()[0];
        let mut r = rng::from_seed(3);
        for start in all_strings(len) {
            let d = hamming(&start, peak).unwrap();
            let c = next_ascent_climb(&inst, start, &mut r, u64::MAX).unwrap();
            assert_eq!(&c.local_optimum, peak);
            assert_eq!(c.accepted_flips, d);
            assert!(c.converged);
            assert_eq!(c.eval.fitness, 1.0);
        }
    }
}

#[test]
fn restarts_follow_the_geometric_law() {
    let inst = generate_instance(20, 40, LINEAR, 11).unwrap();
    let mut r = rng::from_seed(12);
    let climbs = 4000;
    let mut hits = 0;
    for _ in 0..climbs {
        let start = BitString::random(40, &mut r).unwrap();
        let c = next_ascent_climb(&inst, start, &mut r, u64::MAX).unwrap();
        hits += inst.is_global_optimum(&c.local_optimum).unwrap() as usize;
    }
    let p = hits as f64 / climbs as f64;
    assert!(p > 0.0);

    let runs = 400u64;
    let mut total = 0u64;
    for seed in 0..runs {
        let out = multi_restart_climb(&inst, &ClimbConfig::new(u64::MAX, 10_000 + seed)).unwrap();
        assert!(out.success);
        total += out.restarts;
    }
    let mean = total as f64 / runs as f64;
    let expect = (1.0 - p) / p;
    // Spread of the run mean plus the effect of the error in p.
    let se_mean = ((1.0 - p) / (p * p) / runs as f64).sqrt();
    let se_p = (p * (1.0 - p) / climbs as f64).sqrt() / (p * p);
    let tol = 4.0 * (se_mean * se_mean + se_p * se_p).sqrt();
    assert!((mean - expect).abs() <= tol, "mean {mean}, expected {expect} +- {tol}");
}

#[test]
fn same_seed_same_outcome() {
    let inst = generate_instance(30, 60, LINEAR, 5).unwrap();
    let cfg = ClimbConfig::new(200_000, 42);
    assert_eq!(
        multi_restart_climb(&inst, &cfg).unwrap(),
        multi_restart_climb(&inst, &cfg).unwrap()
    );
}

#[test]
fn budget_is_respected() {
    let inst = generate_instance(100, 100, LINEAR, 1).unwrap();
    for budget in [1, 2, 50, 101, 1000, 5000] {
        let out = multi_restart_climb(&inst, &ClimbConfig::new(budget, 7)).unwrap();
        assert!(out.evaluations_used <= budget);
        if !out.success {
            assert_eq!(out.evaluations_used, budget);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn climbs_end_at_local_optima(
        peaks in 1usize..15,
        len in 4usize..80,
        iseed in any::<u64>(),
        seed in any::<u64>(),
    ) {
        prop_assume!(len >= 8 || peaks <= 1 << len);
        let inst = generate_instance(peaks, len, LINEAR, iseed).unwrap();
        let mut r = rng::from_seed(seed);
        let start = BitString::random(len, &mut r).unwrap();
        let f0 = inst.evaluate(&start).unwrap().fitness;
        let c = next_ascent_climb(&inst, start, &mut r, u64::MAX).unwrap();
        prop_assert!(c.converged);
        prop_assert!(c.eval.fitness >= f0);
        prop_assert_eq!(c.eval, inst.evaluate(&c.local_optimum).unwrap());
        prop_assert!(c.evaluations >= (c.accepted_flips + len + 1) as u64);
        let mut y = c.local_optimum.clone();
        for i in 0..len {
            y.flip(i);
            prop_assert!(inst.evaluate(&y).unwrap().fitness <= c.eval.fitness);
            y.flip(i);
        }
    }
}
