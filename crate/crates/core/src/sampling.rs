//! Seeded randomness shared by every randomized procedure.
//!
//! All generators are ChaCha8 keyed by a 64-bit seed, with the stream id
//! selecting an independent sequence, so paired runs reuse random numbers.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Stream id for a named module and a trial index.
pub fn stream_id(module: &str, trial: u64) -> u64 {
    // FNV-1a on the module name, then mixed with the trial index
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in module.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Draws indices with probability proportional to integer masses.
///
/// A uniform `r ∈ [0, 2^64)` selects the first `i` with
/// `r · total < C_i · 2^64`, `C_i` the cumulative mass, so the probability of
/// each index is within `2^-64` of its mass share and zero masses are never drawn.
#[derive(Clone, Debug)]
pub struct WeightedIndex {
    cumulative: Vec<u128>,
    total: u128,
}

impl WeightedIndex {
    /// `None` when all masses are zero. The total must fit in `u64`, as it
    /// does for the masses of a [`crate::VertexDistribution`].
    pub fn new(masses: &[u64]) -> Option<Self> {
        let mut acc = 0u128;
        let cumulative: Vec<u128> = masses
            .iter()
            .map(|&m| {
                acc += m as u128;
                acc
            })
            .collect();
        assert!(acc <= u64::MAX as u128, "total mass exceeds u64");
        (acc > 0).then_some(WeightedIndex { cumulative, total: acc })
    }

    pub fn sample(&self, rng: &mut impl RngCore) -> usize {
        let r = rng.next_u64() as u128;
        self.index_for(r)
    }

    fn index_for(&self, r: u128) -> usize {
        let lhs = r * self.total;
        self.cumulative.partition_point(|&c| (c << 64) <= lhs)
    }
}
