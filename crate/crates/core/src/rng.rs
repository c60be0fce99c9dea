//! Seeded random streams.
//!
//! Every stochastic routine draws from ChaCha8 seeded by `(seed, stream)`,
//! which gives identical sequences on every platform. Distinct streams keep
//! graph generation, parameter initialization, start points and Markov
//! chains independent for the same user-facing seed.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub const STREAM_GRAPH: u64 = 0;
pub const STREAM_PARAMS: u64 = 1;
pub const STREAM_CHAIN: u64 = 2;
pub const STREAM_START: u64 = 3;

pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
