//! Execution strategy for the per-item map step of every experiment.
//!
//! The mapped closures are pure functions of their input, so parallel and
//! sequential execution differ only in wall-clock time, never in results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items` — in parallel when the `parallel` feature is on —
/// collecting outputs in input order.
#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential twin of [`map_collect`]: the baseline the benchmarks
/// and the determinism tests compare the parallel path against.
pub(crate) fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Runs `f` inside a dedicated pool of `threads` workers.
///
/// `None` (or a build without the `parallel` feature) runs `f` directly, so
/// parallel work lands on the global pool. A pool that fails to build —
/// e.g. under exotic resource limits — degrades to the same direct call
/// rather than erroring.
#[cfg(feature = "parallel")]
pub fn run_with_threads<R, F>(threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    if let Some(n) = threads.filter(|&n| n >= 1) {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            return pool.install(f);
        }
    }
    f()
}

/// Sequential builds ignore the thread count entirely.
#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<R, F>(_threads: Option<usize>, f: F) -> R
where
    F: FnOnce() -> R,
{
    f()
}
