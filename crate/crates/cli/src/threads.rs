//! Scoped-thread executor. Workers claim fixed-size blocks of counters; the
//! results are the same as for the serial executor.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use tgrs_core::exec::{Executor, Serial};

const BLOCK: u64 = 64;

#[derive(Debug, Clone, Copy)]
pub struct Threads {
    n: usize,
}

impl Threads {
    /// `n = 0` is treated as 1.
    pub fn new(n: usize) -> Self {
        Threads { n: n.max(1) }
    }
}

impl Executor for Threads {
    fn find_first<T, F>(&self, range: Range<u64>, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync,
    {
        if self.n == 1 {
            return Serial.find_first(range, f);
        }
        let next = AtomicU64::new(range.start);
        let best = AtomicU64::new(u64::MAX);
        let found: Mutex<Option<(u64, T)>> = Mutex::new(None);
        std::thread::scope(|s| {
            for _ in 0..self.n {
                s.spawn(|| loop {
                    let start = next.fetch_add(BLOCK, Ordering::Relaxed);
                    // blocks past the best hit cannot improve it
                    if start >= range.end || start > best.load(Ordering::Acquire) {
                        break;
                    }
                    for i in start..(start + BLOCK).min(range.end) {
                        if i > best.load(Ordering::Acquire) {
                            break;
                        }
                        if let Some(t) = f(i) {
                            let mut slot = found.lock().unwrap();
                            if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                                *slot = Some((i, t));
                                best.fetch_min(i, Ordering::AcqRel);
                            }
                            break;
                        }
                    }
                });
            }
        });
        found.into_inner().unwrap()
    }

    fn map<T, F>(&self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync,
    {
        if self.n == 1 {
            return Serial.map(range, f);
        }
        let next = AtomicU64::new(range.start);
        let parts: Mutex<Vec<(u64, Vec<T>)>> = Mutex::new(Vec::new());
        std::thread::scope(|s| {
            for _ in 0..self.n {
                s.spawn(|| loop {
                    let start = next.fetch_add(BLOCK, Ordering::Relaxed);
                    if start >= range.end {
                        break;
                    }
                    let block: Vec<T> = (start..(start + BLOCK).min(range.end)).map(&f).collect();
                    parts.lock().unwrap().push((start, block));
                });
            }
        });
        let mut parts = parts.into_inner().unwrap();
        parts.sort_unstable_by_key(|(start, _)| *start);
        parts.into_iter().flat_map(|(_, b)| b).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_serial() {
        let f = |i: u64| (i % 97 == 13 || i % 89 == 5).then_some(i * 2);
        for n in [1, 2, 4, 7] {
            let t = Threads::new(n);
            assert_eq!(t.find_first(0..5000, f), Serial.find_first(0..5000, f));
            assert_eq!(t.find_first(200..5000, f), Serial.find_first(200..5000, f));
            assert_eq!(t.find_first(0..5, f), None);
            assert_eq!(t.map(3..1000, |i| i * i), Serial.map(3..1000, |i| i * i));
        }
    }
}
