use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rng;

use super::bitstring::{word_distance, words_for, BitString};

/// Rejection-sampling cap: at most this many draws per requested peak.
pub const MAX_DRAWS_PER_PEAK: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HeightScheme {
    /// Every peak has height 1.0.
    Equal,
    /// Heights interpolated linearly from 1.0 down to `h_min`.
    Linear { h_min: f64 },
}

impl HeightScheme {
    pub fn validate(&self) -> Result<()> {
        match *self {
            HeightScheme::Equal => Ok(()),
            HeightScheme::Linear { h_min } if h_min > 0.0 && h_min < 1.0 => Ok(()),
            HeightScheme::Linear { h_min } => Err(Error::invalid(format!(
                "linear h_min must lie in (0, 1), got {h_min}"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HeightScheme::Equal => "equal",
            HeightScheme::Linear { .. } => "linear",
        }
    }
}

impl fmt::Display for HeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightScheme::Equal => f.write_str("equal"),
            HeightScheme::Linear { h_min } => write!(f, "linear {h_min}"),
        }
    }
}

/// Descending peak heights, first element 1.0.
pub fn assign_heights(peaks: usize, scheme: HeightScheme) -> Result<Vec<f64>> {
    if peaks == 0 {
        return Err(Error::invalid("peak count must be at least 1"));
    }
    scheme.validate()?;
    Ok(match scheme {
        HeightScheme::Equal => vec![1.0; peaks],
        HeightScheme::Linear { .. } if peaks == 1 => vec![1.0],
        HeightScheme::Linear { h_min } => {
            let step = (1.0 - h_min) / (peaks - 1) as f64;
            (0..peaks).map(|i| 1.0 - i as f64 * step).collect()
        }
    })
}

/// Which strings count as solving an instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SuccessRule {
    /// Only `peaks[0]` counts.
    #[default]
    GlobalPeak,
    /// Any peak whose height equals `heights[0]`. Differs from `GlobalPeak`
    /// only when several peaks share the top height (e.g. the equal scheme).
    AnyTopPeak,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub fitness: f64,
    pub nearest_peak: usize,
    pub distance: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    length: usize,
    scheme: HeightScheme,
    seed: u64,
    peaks: Vec<BitString>,
    heights: Vec<f64>,
    // Peak words laid out contiguously for the nearest-peak scan.
    packed: Vec<u64>,
    words_per_peak: usize,
}

impl ProblemInstance {
    /// Assembles an instance from explicit peaks and heights, checking every
    /// structural invariant (distinct peaks of equal length, heights in
    /// (0, 1] and descending from 1.0).
    pub fn new(
        peaks: Vec<BitString>,
        heights: Vec<f64>,
        scheme: HeightScheme,
        seed: u64,
    ) -> Result<Self> {
        scheme.validate()?;
        let first = peaks
            .first()
            .ok_or_else(|| Error::invalid("instance needs at least one peak"))?;
        let length = first.len();
        if peaks.len() != heights.len() {
            return Err(Error::invalid(format!(
                "{} peaks but {} heights",
                peaks.len(),
                heights.len()
            )));
        }
        if let Some(p) = peaks.iter().find(|p| p.len() != length) {
            return Err(Error::LengthMismatch {
                left: length,
                right: p.len(),
            });
        }
        let mut seen = HashSet::with_capacity(peaks.len());
        for (i, p) in peaks.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::invalid(format!("peak {i} duplicates an earlier peak")));
            }
        }
        if heights[0] != 1.0 {
            return Err(Error::invalid(format!(
                "highest peak must have height 1.0, got {}",
                heights[0]
            )));
        }
        for (i, &h) in heights.iter().enumerate() {
            if !(h > 0.0 && h <= 1.0) {
                return Err(Error::invalid(format!("height {i} = {h} outside (0, 1]")));
            }
        }
        if let Some(i) = heights.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "heights must be descending, but height {} < height {}",
                i,
                i + 1
            )));
        }
        let words_per_peak = words_for(length);
        let packed = peaks.iter().flat_map(|p| p.words().iter().copied()).collect();
        Ok(ProblemInstance {
            length,
            scheme,
            seed,
            peaks,
            heights,
            packed,
            words_per_peak,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn peak_count(&self) -> usize {
        self.peaks.len()
    }

    pub fn peaks(&self) -> &[BitString] {
        &self.peaks
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn scheme(&self) -> HeightScheme {
        self.scheme
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn check_len(&self, x: &BitString) -> Result<()> {
        if x.len() != self.length {
            return Err(Error::LengthMismatch {
                left: self.length,
                right: x.len(),
            });
        }
        Ok(())
    }

    /// Index and distance of the nearest peak.
    ///
    /// Heights are stored descending, so the first index reaching the
    /// minimum distance is both the highest of the tied peaks and, among
    /// equal heights, the lowest index.
    pub fn nearest_peak(&self, x: &BitString) -> Result<(usize, usize)> {
        self.check_len(x)?;
        Ok(self.nearest_unchecked(x))
    }

    #[inline]
    fn nearest_unchecked(&self, x: &BitString) -> (usize, usize) {
        let xw = x.words();
        let mut best = (0, usize::MAX);
        for (i, peak) in self.packed.chunks_exact(self.words_per_peak).enumerate() {
            let d = word_distance(xw, peak);
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    pub fn evaluate(&self, x: &BitString) -> Result<EvalResult> {
        self.check_len(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    /// Evaluation without the length check, for callers that only ever
    /// produce strings of the instance length.
    #[inline]
    pub(crate) fn evaluate_unchecked(&self, x: &BitString) -> EvalResult {
        let (nearest_peak, distance) = self.nearest_unchecked(x);
        let fitness =
            (self.length - distance) as f64 / self.length as f64 * self.heights[nearest_peak];
        EvalResult {
            fitness,
            nearest_peak,
            distance,
        }
    }

    pub fn is_global_optimum(&self, x: &BitString) -> Result<bool> {
        self.check_len(x)?;
        Ok(x == &self.peaks[0])
    }

    /// Whether an evaluated string solves the instance under `rule`.
    pub fn is_solved(&self, eval: &EvalResult, rule: SuccessRule) -> bool {
        if eval.distance != 0 {
            return false;
        }
        match rule {
            SuccessRule::GlobalPeak => eval.nearest_peak == 0,
            SuccessRule::AnyTopPeak => self.heights[eval.nearest_peak] == self.heights[0],
        }
    }
}

/// Draws `peaks` distinct uniform peaks of `length` bits.
///
/// Peaks are drawn in order from a ChaCha8 stream seeded with `seed` (see
/// [`BitString::random`] for the word layout). A draw that duplicates an
/// earlier peak is discarded and redrawn; after
/// `MAX_DRAWS_PER_PEAK * peaks` total draws generation fails.
pub fn generate_instance(
    peaks: usize,
    length: usize,
    scheme: HeightScheme,
    seed: u64,
) -> Result<ProblemInstance> {
    if length == 0 {
        return Err(Error::invalid("string length must be at least 1"));
    }
    let heights = assign_heights(peaks, scheme)?;
    if length < usize::BITS as usize && peaks > 1usize << length {
        return Err(Error::invalid(format!(
            "{peaks} distinct peaks do not fit in {length}-bit space"
        )));
    }
    let mut rng = rng::from_seed(seed);
    let budget = MAX_DRAWS_PER_PEAK.saturating_mul(peaks);
    let mut seen = HashSet::with_capacity(peaks);
    let mut out = Vec::with_capacity(peaks);
    let mut draws = 0;
    while out.len() < peaks {
        if draws == budget {
            return Err(Error::PeakPlacement {
                peaks,
                attempts: draws,
            });
        }
        draws += 1;
        let p = BitString::random(length, &mut rng)?;
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    ProblemInstance::new(out, heights, scheme, seed)
}
