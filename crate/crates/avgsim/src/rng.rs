//! Deterministic seed derivation.
//!
//! Every run owns a master seed; per-trial and per-stream generators are
//! derived with the SplitMix64 finalizer so that streams are decorrelated
//! even for adjacent trial indices. Sequential seeds (`seed + i`) are never
//! fed to a generator directly.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 increment (golden-ratio constant).
pub const SEED_MIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective 64-bit mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent stream seed from a master seed and a stream index.
#[inline]
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(SEED_MIX_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// The generator used throughout the crate. ChaCha keeps the stream stable
/// across platforms and compiler versions.
pub type Rng = ChaCha8Rng;

/// Build the crate's generator from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// FNV-1a over a byte stream; used for stable content fingerprints.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}
