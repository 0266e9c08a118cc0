//! Deterministic sub-seeding.
//!
//! Every random draw in this crate comes from a ChaCha8 generator seeded with
//! a SplitMix64-derived stream id, so distinct streams (latent innovations,
//! measurement noise, replications) are independent yet fully reproducible
//! from one master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recorded in output manifests so files carry their own provenance.
pub const RNG_ID: &str = "chacha8/splitmix64-streams";

pub const STREAM_LATENT: u64 = 0;
pub const STREAM_NOISE: u64 = 1;
pub const STREAM_ARMA: u64 = 2;

/// SplitMix64 finalizer applied to `master + (stream+1)*gamma`.
///
/// The +1 keeps `derive_stream(s, 0)` distinct from `s` itself.
pub fn derive_stream(master: u64, stream: u64) -> u64 {
    let mut z = master.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn stream_rng(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_stream(master, stream))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_distinct() {
        let seeds: Vec<u64> = (0..64).map(|s| derive_stream(42, s)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
    }

    #[test]
    fn derivation_is_stable() {
        // frozen so a refactor cannot silently re-map every seed
        assert_eq!(derive_stream(0, 0), 16294208416658607535);
        assert_eq!(derive_stream(42, 1), derive_stream(42, 1));
        assert_ne!(derive_stream(42, 0), derive_stream(43, 0));
    }
}
