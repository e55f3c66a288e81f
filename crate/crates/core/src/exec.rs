//! Execution mode for the data-parallel sweeps.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] fans work out over
//! the current rayon pool. Without it both modes run the same sequential loop,
//! so results never depend on the mode.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving `filter_map` over an integer range.
pub(crate) fn filter_map_range<T, F>(exec: Exec, range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    range.filter_map(f).collect()
}

pub(crate) fn count_range<F>(exec: Exec, range: Range<u64>, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().filter(|&x| pred(x)).count() as u64;
    }
    let _ = exec;
    range.filter(|&x| pred(x)).count() as u64
}

/// Order-preserving map over a slice.
pub(crate) fn map_slice<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
