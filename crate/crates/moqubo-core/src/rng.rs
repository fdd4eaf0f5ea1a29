//! Deterministic random-stream derivation.
//!
//! Every stochastic component derives its generator from a base seed plus a
//! structural position (weight index, read index, pass index, …) so that runs
//! are reproducible and independent units could execute in any order without
//! changing results.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a base seed with a sequence of salts into a new seed.
pub fn derive_seed(base: u64, salts: &[u64]) -> u64 {
    let mut acc = splitmix64(base);
    for &salt in salts {
        acc = splitmix64(acc ^ splitmix64(salt.wrapping_add(0x51ed_270b)));
    }
    acc
}

/// Seeds a generator for the stream identified by `(base, salts)`.
pub fn derive_rng(base: u64, salts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, salts))
}
