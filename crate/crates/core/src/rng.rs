//! Reproducible random streams.
//!
//! Stream `(seed, index)` is a ChaCha8 generator keyed by `seed` on stream
//! `index`, so per-thread streams never overlap.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SawRng = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> SawRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
