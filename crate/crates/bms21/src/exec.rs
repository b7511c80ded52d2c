//! Deterministic execution helpers.
//!
//! Data-parallel kernels in this crate all funnel through [`map_indexed`]: a
//! map over `0..n` whose results are collected *in index order*, followed by
//! whatever reduction the caller performs sequentially. Because the reduction
//! order is fixed, the output is bit-identical whether the map ran on rayon
//! (the default `parallel` feature) or on one thread — a property the tests
//! assert. The sequential twins ([`map_indexed_seq`], [`sum_indexed_seq`]) are
//! always compiled so benchmarks can compare both paths in a single run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum work size before the parallel path engages; below this the
/// sequential twin is used even with the feature enabled (thread fan-out on
/// tiny grids costs more than it saves).
const PAR_THRESHOLD: usize = 512;

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if n < PAR_THRESHOLD {
        return map_indexed_seq(n, f);
    }
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(n, f)
}

/// Sequential twin of [`map_indexed`]; always available for benchmarks and
/// determinism tests.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Sum `f(i)` over `0..n` in index order. The values are materialized first
/// (possibly in parallel) and then folded sequentially, so the floating-point
/// result does not depend on the parallel split.
pub fn sum_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_indexed(n, f).iter().sum()
}

/// Sequential twin of [`sum_indexed`].
pub fn sum_indexed_seq<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64,
{
    map_indexed_seq(n, f).iter().sum()
}

/// Mean and standard error of `f(i)` over `0..n`, reduced in index order.
pub fn mean_and_se<F>(n: usize, f: F) -> (f64, f64)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    assert!(n >= 2, "standard error needs at least two samples");
    let terms = map_indexed(n, f);
    let mean = terms.iter().sum::<f64>() / n as f64;
    let var = terms.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

/// An RNG for sample `index` of the stream named by `seed`.
///
/// Each Monte-Carlo sample gets its own generator derived by a SplitMix64
/// scramble of (seed, index), so the stream partition is independent of how
/// samples are distributed over threads.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(
        seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15),
    ))
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
