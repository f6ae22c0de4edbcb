//! Data-parallel helpers. With the `parallel` feature off, everything runs
//! sequentially and `Exec::Parallel` behaves like `Exec::Sequential`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

impl Exec {
    /// Whether `f` holds for every index in `0..n`.
    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().with_min_len(1024).all(f),
            _ => (0..n).all(f),
        }
    }

    /// Maps `f` over `items`, keeping their order.
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Runs `f` with at most `jobs` worker threads (0 means the default).
    pub fn with_jobs<R: Send>(self, jobs: usize, f: impl FnOnce() -> R + Send) -> R {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel if jobs > 0 => {
                match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                    Ok(pool) => pool.install(f),
                    Err(_) => f(),
                }
            }
            _ => {
                let _ = jobs;
                f()
            }
        }
    }
}
