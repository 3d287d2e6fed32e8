//! Reductions whose result does not depend on the worker count.

use rayon::prelude::*;

/// Fixed block size for partial sums. Blocks are combined serially in index
/// order, so the floating-point result is the same for any thread pool.
pub const BLOCK: usize = 4096;

pub fn sum_by<T: Sync>(items: &[T], f: impl Fn(&T) -> f64 + Sync) -> f64 {
    let partials: Vec<f64> = items
        .par_chunks(BLOCK)
        .map(|chunk| chunk.iter().map(&f).sum::<f64>())
        .collect();
    partials.into_iter().sum()
}

pub fn max_by<T: Sync>(items: &[T], f: impl Fn(&T) -> f64 + Sync + Send) -> f64 {
    items
        .par_iter()
        .map(f)
        .reduce(|| 0.0, f64::max)
}
