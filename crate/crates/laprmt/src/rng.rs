//! Counter-based random number streams.
//!
//! All sampling in this crate is keyed by `(seed, index)` pairs so that any
//! trial, matrix, or matrix row can be regenerated in isolation and results
//! never depend on scheduling order. The scheme:
//!
//! - a trial gets its own 64-bit seed via [`mix`];
//! - within a matrix, every row of the strict lower triangle draws from its
//!   own ChaCha stream ([`row_rng`]), so rows may be filled in any order (or
//!   in parallel) and sparse samplers may skip ahead within a row without
//!   perturbing any other row.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; bijective on `u64` with good avalanche behavior.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derive an independent child seed from a base seed and an index.
///
/// Used for trial seeds (`mix(base, trial)`) and for independent components
/// within one construction (`mix(trial_seed, tag)`).
pub fn mix(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(0xa076_1d64_78bd_642f)))
}

/// A generator for the given seed, stream 0.
pub fn chacha(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The generator for one matrix row: same key as [`chacha`], dedicated stream.
pub fn row_rng(seed: u64, row: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(row.wrapping_add(1));
    rng
}
