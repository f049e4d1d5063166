//! Index-parallel map with a sequential fallback.
//!
//! Work items are addressed by index and every item derives its own random
//! stream, so results do not depend on how items are scheduled. With the
//! `parallel` feature disabled every [`Execution`] runs sequentially.

use std::num::NonZeroUsize;

/// Environment variable naming the worker count.
pub const WORKERS_ENV: &str = "FORGETTING_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel { workers: NonZeroUsize },
}

impl Execution {
    pub fn with_workers(workers: usize) -> Self {
        match NonZeroUsize::new(workers) {
            Some(w) if w.get() > 1 => Execution::Parallel { workers: w },
            _ => Execution::Sequential,
        }
    }

    /// Reads [`WORKERS_ENV`]; absent or unparsable means all available processors.
    pub fn from_env() -> Self {
        let workers = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(NonZeroUsize::get)
                    .unwrap_or(1)
            });
        Execution::with_workers(workers)
    }

    pub fn workers(&self) -> usize {
        match self {
            Execution::Sequential => 1,
            Execution::Parallel { workers } => workers.get(),
        }
    }
}

impl Default for Execution {
    fn default() -> Self {
        Execution::from_env()
    }
}

/// `(0..count).map(f)` collected in index order.
pub fn map_indexed<T, F>(exec: Execution, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..count).map(f).collect(),
        Execution::Parallel { workers } => parallel_map(workers.get(), count, f),
    }
}

/// Like [`map_indexed`], stopping at the first error in index order.
pub fn try_map_indexed<T, E, F>(exec: Execution, count: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    map_indexed(exec, count, f).into_iter().collect()
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(workers: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;

    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
        Err(_) => (0..count).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(_workers: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_index_order() {
        let seq = map_indexed(Execution::Sequential, 100, |i| i * i);
        let par = map_indexed(Execution::with_workers(4), 100, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }

    #[test]
    fn one_worker_is_sequential() {
        assert_eq!(Execution::with_workers(1), Execution::Sequential);
        assert_eq!(Execution::with_workers(0), Execution::Sequential);
        assert_eq!(Execution::with_workers(3).workers(), 3);
    }

    #[test]
    fn first_error_wins() {
        let r: Result<Vec<usize>, usize> = try_map_indexed(Execution::with_workers(2), 10, |i| {
            if i % 4 == 3 {
                Err(i)
            } else {
                Ok(i)
            }
        });
        assert_eq!(r, Err(3));
    }
}
