use crate::error::Result;
use crate::landscape::{generate_instance, BitString, HeightScheme, ProblemInstance};
use crate::rng;
use rand::Rng as _;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub instances: usize,
    pub strings_checked: u64,
    pub mismatches: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

// Bit-by-bit scan of every peak; ties resolved by explicit height comparison
// rather than by relying on the stored order.
fn exhaustive(inst: &ProblemInstance, x: &BitString) -> (usize, usize, f64) {
    let mut best: Option<(usize, usize)> = None;
    for (i, p) in inst.peaks().iter().enumerate() {
        let d = (0..x.len()).filter(|&k| x.get(k) != p.get(k)).count();
        best = match best {
            None => Some((i, d)),
            Some((j, bd)) if d < bd || (d == bd && inst.heights()[i] > inst.heights()[j]) => {
                Some((i, d))
            }
            keep => keep,
        };
    }
    let (i, d) = best.expect("instance has peaks");
    let l = x.len();
    (i, d, (l - d) as f64 / l as f64 * inst.heights()[i])
}

/// Evaluates every string of `instances` random small instances (L <= 10,
/// P <= 8, both height schemes) and compares against an exhaustive scan.
pub fn verify_oracle(instances: usize, seed: u64) -> Result<VerifyReport> {
    let mut r = rng::from_seed(seed);
    let mut report = VerifyReport::default();
    for k in 0..instances {
        let length = r.gen_range(1..=10usize);
        let peaks = r.gen_range(1..=8usize.min(1 << length));
        let scheme = if r.gen_bool(0.5) {
            HeightScheme::Equal
        } else {
            HeightScheme::Linear {
                h_min: r.gen_range(0.05..0.95),
            }
        };
        let inst = generate_instance(peaks, length, scheme, seed.wrapping_add(k as u64))?;
        for v in 0u32..(1 << length) {
            let bits: Vec<u8> = (0..length).map(|b| ((v >> b) & 1) as u8).collect();
            let x = BitString::from_bits(&bits)?;
            let got = inst.evaluate(&x)?;
            let (i, d, f) = exhaustive(&inst, &x);
            report.strings_checked += 1;
            if (got.nearest_peak, got.distance) != (i, d) || got.fitness != f {
                report.mismatches += 1;
            }
        }
        report.instances += 1;
    }
    Ok(report)
}
