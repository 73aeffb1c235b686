use peaklab::landscape::{
    assign_heights, generate_instance, hamming, parse_instance, serialize_instance, BitString,
    HeightScheme, ProblemInstance,
};
use proptest::prelude::*;

/// Exhaustive nearest-peak scan written independently of the library:
/// bit-by-bit distances, explicit height tie-break, lowest index last.
fn oracle(inst: &ProblemInstance, x: &[u8]) -> (usize, usize, f64) {
    let peaks: Vec<Vec<u8>> = inst.peaks().iter().map(|p| p.to_bits()).collect();
    let h = inst.heights();
    let mut best = 0;
    let mut best_d = usize::MAX;
    for (i, p) in peaks.iter().enumerate() {
        let d = p.iter().zip(x).filter(|(a, b)| a != b).count();
        if d < best_d || (d == best_d && h[i] > h[best]) {
            best = i;
            best_d = d;
        }
    }
    let l = x.len() as f64;
    (best, best_d, (l - best_d as f64) / l * h[best])
}

fn all_strings(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << len).map(move |v| (0..len).map(|b| ((v >> b) & 1) as u8).collect())
}

fn scheme_strategy() -> impl Strategy<Value = HeightScheme> {
    prop_oneof![
        Just(HeightScheme::Equal),
        (0.01f64..0.99).prop_map(|h_min| HeightScheme::Linear { h_min }),
    ]
}

#[test]
fn eight_bit_instance_matches_full_enumeration() {
    let inst = generate_instance(4, 8, HeightScheme::Linear { h_min: 0.5 }, 21).unwrap();
    for x in all_strings(8) {
        let e = inst.evaluate(&BitString::from_bits(&x).unwrap()).unwrap();
        assert_eq!((e.nearest_peak, e.distance, e.fitness), oracle(&inst, &x));
    }
}

#[test]
fn six_bit_nearest_peak_matches_scan() {
    let inst = generate_instance(3, 6, HeightScheme::Linear { h_min: 0.3 }, 4).unwrap();
    for x in all_strings(6) {
        let (j, d) = inst.nearest_peak(&BitString::from_bits(&x).unwrap()).unwrap();
        let (oj, od, _) = oracle(&inst, &x);
        assert_eq!((j, d), (oj, od));
    }
}

#[test]
fn inter_peak_distance_is_binomial() {
    // Bin(100, 1/2): mean 50, sd 5.
    let samples: Vec<f64> = (0..1000u64)
        .map(|s| {
            let inst = generate_instance(2, 100, HeightScheme::Linear { h_min: 0.5 }, s).unwrap();
            hamming(&inst.peaks()[0], &inst.peaks()[1]).unwrap() as f64
        })
        .collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let sd = (samples.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    assert!((mean - 50.0).abs() <= 3.0 * 5.0 / n.sqrt(), "mean {mean}");
    assert!((sd - 5.0).abs() <= 0.15 * 5.0, "sd {sd}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exhaustive_agreement_small_instances(
        length in 1usize..=10,
        peaks in 1usize..=8,
        scheme in scheme_strategy(),
        seed in any::<u64>(),
    ) {
        let peaks = peaks.min(1 << length);
        let inst = generate_instance(peaks, length, scheme, seed).unwrap();
        for x in all_strings(length) {
            let e = inst.evaluate(&BitString::from_bits(&x).unwrap()).unwrap();
            prop_assert_eq!((e.nearest_peak, e.distance, e.fitness), oracle(&inst, &x));
        }
    }

    #[test]
    fn fitness_bounds_and_nearest_property(
        peaks in 1usize..20,
        seed in any::<u64>(),
        xseed in any::<u64>(),
    ) {
        let inst = generate_instance(peaks, 70, HeightScheme::Linear { h_min: 0.5 }, seed).unwrap();
        let x = BitString::random(70, &mut peaklab::rng::from_seed(xseed)).unwrap();
        let e = inst.evaluate(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&e.fitness));
        prop_assert_eq!(e.fitness == 1.0, x == inst.peaks()[0]);
        prop_assert!(e.distance <= 70);
        let l = 70.0;
        prop_assert_eq!(e.fitness, (l - e.distance as f64) / l * inst.heights()[e.nearest_peak]);
        for (i, p) in inst.peaks().iter().enumerate() {
            let d = hamming(&x, p).unwrap();
            prop_assert!(e.distance <= d);
            if d == e.distance {
                prop_assert!(inst.heights()[e.nearest_peak] >= inst.heights()[i]);
            }
        }
    }

    #[test]
    fn hamming_is_a_metric(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let mk = |s| BitString::random(90, &mut peaklab::rng::from_seed(s)).unwrap();
        let (x, y, z) = (mk(a), mk(b), mk(c));
        let dxy = hamming(&x, &y).unwrap();
        prop_assert_eq!(dxy, hamming(&y, &x).unwrap());
        prop_assert_eq!(dxy == 0, x == y);
        prop_assert!(hamming(&x, &z).unwrap() <= dxy + hamming(&y, &z).unwrap());
    }

    #[test]
    fn instance_text_round_trip(
        peaks in 1usize..12,
        length in 4usize..150,
        scheme in scheme_strategy(),
        seed in any::<u64>(),
    ) {
        let inst = generate_instance(peaks, length, scheme, seed).unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn generation_is_pure_and_valid(
        peaks in 1usize..40,
        length in 6usize..80,
        h_min in 0.01f64..0.99,
        seed in any::<u64>(),
    ) {
        let scheme = HeightScheme::Linear { h_min };
        let a = generate_instance(peaks, length, scheme, seed).unwrap();
        prop_assert_eq!(&a, &generate_instance(peaks, length, scheme, seed).unwrap());
        let want = assign_heights(peaks, scheme).unwrap();
        prop_assert_eq!(a.heights(), want.as_slice());
        let mut sorted = a.peaks().to_vec();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), peaks);
        if peaks > 1 {
            for (i, h) in a.heights().iter().enumerate() {
                let want = 1.0 - i as f64 * (1.0 - h_min) / (peaks - 1) as f64;
                prop_assert!((h - want).abs() < 1e-12);
            }
        }
    }
}
