//! Seed derivation and unbiased integer draws.
//!
//! All samplers in this crate take an explicit `RngCore` stream owned by the
//! caller; identical seeds yield identical draw sequences. Concurrent
//! sampling uses one independent stream per worker, with worker seeds
//! derived from the master seed by [`derive_seed`].

use num_bigint::BigUint;
use num_traits::Zero;
use rand_core::RngCore;

/// Derives the seed for worker `worker` from a master seed.
///
/// This is the SplitMix64 generator: the master seed is advanced by
/// `worker + 1` increments of the golden-ratio constant and the result is
/// passed through the SplitMix64 finalizer. The mapping is fixed and is part
/// of the reproducibility contract: output files record the master seed, and
/// worker `k` always receives `derive_seed(master, k)`.
pub fn derive_seed(master: u64, worker: u64) -> u64 {
    let mut z = master.wrapping_add(
        0x9E37_79B9_7F4A_7C15u64.wrapping_mul(worker.wrapping_add(1)),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw from `0..n` by rejection; no modulo bias.
pub fn uniform_index(rng: &mut impl RngCore, n: usize) -> usize {
    assert!(n > 0, "uniform_index requires a nonempty range");
    let n = n as u64;
    // Largest multiple of n that fits in u64.
    let zone = u64::MAX - (u64::MAX % n + 1) % n;
    loop {
        let v = rng.next_u64();
        if v <= zone {
            return (v % n) as usize;
        }
    }
}

/// Uniform draw from `0..bound` over big integers, again by rejection:
/// sample `bound.bits()` random bits until the value is below the bound.
pub fn uniform_biguint_below(rng: &mut impl RngCore, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "uniform_biguint_below requires bound > 0");
    let bits = bound.bits();
    let n_words = bits.div_ceil(64) as usize;
    let top_mask = if bits.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (bits % 64)) - 1
    };
    loop {
        let mut words: Vec<u64> = (0..n_words).map(|_| rng.next_u64()).collect();
        if let Some(top) = words.last_mut() {
            *top &= top_mask;
        }
        let candidate = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<u32>>(),
        );
        if candidate < *bound {
            return candidate;
        }
    }
}
