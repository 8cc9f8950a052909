//! SplitMix64 generator used for reproducible random fillings.
//!
//! The filling protocol is part of the cross-implementation contract: given
//! the same `(master_seed, trial_index)` the occupation pattern must be
//! bit-identical everywhere, so we pin a published, trivially portable
//! generator instead of going through an RNG crate whose stream could shift
//! between versions.
//!
//! Substream rule: the per-trial generator state is seeded with
//! `master_seed XOR (trial_index * 0x9E3779B97F4A7C15)` and one uniform
//! draw is consumed per lattice site in row-major site order.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Generator seeded directly with `seed`.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Per-trial substream of a master seed.
    pub fn for_trial(master_seed: u64, trial_index: u64) -> Self {
        Self::new(master_seed ^ trial_index.wrapping_mul(GOLDEN_GAMMA))
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
