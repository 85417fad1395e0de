//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work fans out over the current
//! rayon pool; without it, or with [`Exec::Sequential`], everything runs on
//! the calling thread. Results are always returned in input order, so output
//! never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution policy for the enumeration-heavy entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// `items.map(f)`, order preserving.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Index of the first item satisfying `pred`, evaluated in parallel.
pub fn position_first<T, F>(exec: Exec, items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().position_first(pred),
        _ => items.iter().position(pred),
    }
}
