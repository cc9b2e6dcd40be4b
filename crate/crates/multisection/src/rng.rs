//! Seed derivation for reproducible parallel runs.
//!
//! Monte-Carlo trials and sweep cells each get their own RNG seeded by a
//! pure function of (base seed, task indices). Results are then identical
//! no matter how work is scheduled across threads.
//!
//! The mixer is the SplitMix64 finalizer (Steele, Lea & Flood's SplittableRandom
//! increment-and-mix step), a well-studied 64-bit avalanche function.

/// SplitMix64 finalizer: one increment-and-mix step.
pub fn split_mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent seed from a base seed and two task indices.
///
/// Computed as three chained SplitMix64 steps:
/// `mix(mix(mix(base) ^ stream) ^ index)`.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    split_mix64(split_mix64(split_mix64(base) ^ stream) ^ index)
}
