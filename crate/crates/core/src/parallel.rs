//! Deterministic parallel search helpers.
//!
//! Every helper returns the same value for any worker count: searches report
//! the match with the smallest index, collections keep index order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

/// Worker count for a solver call. `0` lets rayon pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Parallelism(pub usize);

impl Parallelism {
    pub fn sequential() -> Self {
        Parallelism(1)
    }

    fn pool(self) -> Option<Arc<rayon::ThreadPool>> {
        if self.0 <= 1 {
            return None;
        }
        static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
        let mut pools = POOLS
            .get_or_init(Default::default)
            .lock()
            .expect("pool cache poisoned");
        let pool = pools.entry(self.0).or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(self.0)
                    .build()
                    .expect("thread pool"),
            )
        });
        Some(pool.clone())
    }

    fn run<R: Send>(self, f: impl FnOnce() -> R + Send) -> R {
        match self.pool() {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    /// First `i` in `0..len` for which `f` yields a value.
    pub fn find_map_first<T, F>(self, len: usize, f: F) -> Option<(usize, T)>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        if self.0 == 1 {
            return (0..len).find_map(|i| f(i).map(|t| (i, t)));
        }
        self.run(|| {
            (0..len)
                .into_par_iter()
                .find_map_first(|i| f(i).map(|t| (i, t)))
        })
    }

    /// `f` applied to every index, in index order.
    pub fn map_collect<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if self.0 == 1 {
            return (0..len).map(f).collect();
        }
        self.run(|| (0..len).into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_minimal_for_any_worker_count() {
        for workers in [0, 1, 2, 8] {
            let p = Parallelism(workers);
            let hit = p.find_map_first(10_000, |i| (i % 977 == 976 || i == 5000).then_some(i * 2));
            assert_eq!(hit, Some((976, 1952)));
            assert_eq!(p.find_map_first(100, |_| None::<()>), None);
            assert_eq!(p.map_collect(5, |i| i * i), vec![0, 1, 4, 9, 16]);
        }
    }
}
