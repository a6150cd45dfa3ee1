//! Execution strategy for counter-indexed searches and sweeps.
//!
//! Results never depend on the executor: searches report the smallest
//! accepted counter and sweeps return results in counter order.

use alloc::vec::Vec;
use core::ops::Range;

pub trait Executor: Sync {
    /// Smallest `i` in `range` with `f(i)` returning `Some`, with its value.
    fn find_first<T, F>(&self, range: Range<u64>, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync;

    /// `f` applied to every counter, in counter order.
    fn map<T, F>(&self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync;
}

/// Single-threaded executor.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl Executor for Serial {
    fn find_first<T, F>(&self, range: Range<u64>, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync,
    {
        range.into_iter().find_map(|i| f(i).map(|t| (i, t)))
    }

    fn map<T, F>(&self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync,
    {
        range.map(f).collect()
    }
}
