//! Worker-count control for the data-parallel loops.
//!
//! With the `parallel` feature the loops run on rayon; a worker count of 1,
//! or a build without the feature, takes the plain sequential path. Results
//! never depend on the path taken: reductions are exact integer sums and
//! maps collect in index order.

use crate::error::{Error, Result};

/// Number of worker threads; `None` means one per available core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Workers(Option<usize>);

impl Workers {
    pub fn all_cores() -> Self {
        Workers(None)
    }

    pub fn sequential() -> Self {
        Workers(Some(1))
    }

    pub fn new(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::config("worker count must be at least 1"));
        }
        Ok(Workers(Some(count)))
    }

    pub fn count(&self) -> Option<usize> {
        self.0
    }

    pub fn is_sequential(&self) -> bool {
        !cfg!(feature = "parallel") || self.0 == Some(1)
    }

    /// `sum_{i < n} f(i)`.
    pub fn sum<F>(&self, n: usize, f: F) -> u128
    where
        F: Fn(usize) -> u128 + Sync + Send,
    {
        if self.is_sequential() {
            return (0..n).map(f).sum();
        }
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            self.install(|| (0..n).into_par_iter().map(f).sum())
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    }

    /// `[f(0), .., f(n - 1)]`.
    pub fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if self.is_sequential() {
            return (0..n).map(f).collect();
        }
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            self.install(|| (0..n).into_par_iter().map(f).collect())
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    }

    #[cfg(feature = "parallel")]
    fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        match self.0 {
            None => job(),
            Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                Ok(pool) => pool.install(job),
                // thread spawn failure: the global pool still gives the same answer
                Err(_) => job(),
            },
        }
    }
}
