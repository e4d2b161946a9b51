//! Execution strategy for embarrassingly parallel inner loops.
//!
//! With the `parallel` feature (on by default) independent work items run on
//! the rayon pool; without it the same closure runs sequentially. Results are
//! always collected in index order and reduced by the caller in a fixed
//! sequence, so certificates are bit-identical across both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluate `f` for every index in `0..n`, preserving index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluate `f` for every index in `0..n`, preserving index order.
#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
