//! Compensated accumulation and seeded random substreams.

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_value(v: f64) -> Self {
        CompensatedSum { sum: v, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

const SUBSTREAM_GAMMA: u64 = 0xD1B5_4A32_D192_ED03;

/// Generator for sample `index` of an experiment seeded by `master`.
///
/// The substream seed is the first SplitMix64 output from state
/// `master + (index + 1) * 0xD1B54A32D192ED03` (wrapping), so substreams
/// depend only on `(master, index)` and never on scheduling.
pub fn substream(master: u64, index: u64) -> SplitMix64 {
    use rand::RngCore;
    let state = master.wrapping_add(index.wrapping_add(1).wrapping_mul(SUBSTREAM_GAMMA));
    let seed = SplitMix64::seed_from_u64(state).next_u64();
    SplitMix64::seed_from_u64(seed)
}

/// Distance on the circle `[0,1)`.
#[inline]
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}
