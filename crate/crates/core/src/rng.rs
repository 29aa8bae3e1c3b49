//! Seeded random streams.
//!
//! Every generator derives its randomness from a 64-bit seed plus a fixed
//! stream id, so graph generation and thinning never share a stream.
//! Replicate seeds are derived from `(master seed, replicate index)` the same
//! way, independent of execution order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const STREAM_POISSONIAN: u64 = 1;
pub const STREAM_CONFIGURATION: u64 = 2;
pub const STREAM_THINNING: u64 = 3;
pub const STREAM_SUITE: u64 = 4;
const STREAM_DERIVE_BASE: u64 = 1 << 32;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed of substream `index` under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    stream_rng(master, STREAM_DERIVE_BASE.wrapping_add(index)).next_u64()
}
