//! Deterministic random streams.
//!
//! All randomness comes from ChaCha8 keyed by a 64-bit seed. Independent
//! streams (Monte Carlo chunks, experiment trials) are selected with the
//! ChaCha stream id or with a SplitMix64-derived seed, so results do not depend
//! on how work is split across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator keyed by `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = seeded(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw on `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for cell `(a, b)` of a seeded grid of jobs: `seed ^ mix64(a, b)`.
pub fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    seed ^ mix64(mix64(a) ^ b)
}
