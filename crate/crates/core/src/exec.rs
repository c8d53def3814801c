//! Execution strategy for the data-parallel loops (lattice scans, per-vertex
//! sums, per-point classification).
//!
//! With the `parallel` feature disabled every strategy runs sequentially.
//! Both strategies produce identical output in identical order.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

pub(crate) fn map_slice<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Maps every index of `range` to a batch and concatenates the batches in
/// index order.
pub(crate) fn flat_map_range<U, F>(strategy: Strategy, range: Range<i64>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(i64) -> Vec<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().flat_map_iter(f).collect();
    }
    let _ = strategy;
    range.flat_map(f).collect()
}
