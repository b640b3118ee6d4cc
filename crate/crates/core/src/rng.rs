//! Deterministic randomness.
//!
//! Sequential streams use ChaCha8 seeded through SplitMix64; per-vertex coins are
//! counter-based so that a coin depends only on `(seed, tag, vertex)`.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const RNG_NAME: &str = "chacha8-splitmix64";

#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of the `index`-th substream: `seed` XOR the hashed index, hashed again.
#[inline]
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(substream_seed(seed, index))
}

/// Uniform in `[0, 1)` with 53 random bits, a pure function of its arguments.
#[inline]
pub fn coin(seed: u64, tag: u64, item: u64) -> f64 {
    let h = splitmix64(substream_seed(seed, tag) ^ splitmix64(item.wrapping_add(0x5851_F42D_4C95_7F2D)));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
