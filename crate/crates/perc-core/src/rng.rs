//! Counter-based random numbers.
//!
//! Every random draw in this crate is a pure function of
//! `(master seed, stream id, counter index)`. Replicas use their replica
//! index as the stream id, so simulations parallelize without any shared
//! RNG state and results are bit-identical for a fixed seed regardless of
//! worker count. Because draws are indexed, a length-`n` sample is a prefix
//! of the length-`n+1` sample with the same key.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; a bijective avalanche on 64 bits.
#[inline(always)]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64 uniform bits for the key `(seed, stream, index)`.
#[inline(always)]
pub fn counter_u64(seed: u64, stream: u64, index: u64) -> u64 {
    let mut h = mix(seed ^ GOLDEN);
    h = mix(h ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03));
    h = mix(h ^ index.wrapping_mul(0x8CB9_2BA7_2F3D_8DD7));
    h
}

/// Uniform draw in `[0, 1)` with 53 random bits.
#[inline(always)]
pub fn uniform(seed: u64, stream: u64, index: u64) -> f64 {
    (counter_u64(seed, stream, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bernoulli draw with success probability `p`.
#[inline(always)]
pub fn bernoulli(seed: u64, stream: u64, index: u64, p: f64) -> bool {
    uniform(seed, stream, index) < p
}
