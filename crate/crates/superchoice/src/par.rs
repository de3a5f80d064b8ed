//! Data-parallel helpers with a sequential fallback.
//!
//! Without the `parallel` feature every [`Execution`] runs sequentially.
//! Results never depend on the execution mode: searches return the first
//! hit in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// First `Some` produced by `f` in slice order.
pub fn find_first<T, R, F>(items: &[T], exec: Execution, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().find_map_first(f),
        _ => items.iter().find_map(f),
    }
}

/// `f` over every item, results in slice order.
pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}
