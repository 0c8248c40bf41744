//! Data-parallel execution layer.
//!
//! All bulk numeric loops in the crate go through [`map_collect`], which
//! runs on rayon when the `parallel` feature (default) is enabled and
//! falls back to a plain sequential loop otherwise. Reductions are always
//! performed sequentially over the collected buffer, in index order, so
//! results are bit-identical across thread counts and between the two
//! execution modes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f(0), ..., f(n-1)` into a vector, in parallel when enabled.
#[cfg(feature = "parallel")]
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluates `f(0), ..., f(n-1)` into a vector, in parallel when enabled.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Deterministic sum of `f(i)`: parallel evaluation, fixed-order
/// sequential reduction.
pub fn sum_by<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_collect(n, f).iter().sum()
}

/// Deterministic maximum of `f(i)` (NaN-free inputs assumed).
pub fn max_by<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_collect(n, f)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Independent RNG stream for sample `index` under a master `seed`.
///
/// The index is bijectively mixed (splitmix64 finalizer) before seeding so
/// adjacent streams are decorrelated; the result depends only on
/// `(seed, index)`, never on scheduling.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = index.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(seed);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&z.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
