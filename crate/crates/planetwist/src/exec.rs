//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the helpers dispatch to rayon;
//! without it they degrade to plain iteration. [`sequential_scope`] forces
//! the sequential path at runtime on the current thread, which is what the
//! benchmark suite uses to compare both paths in a single build.

use std::cell::Cell;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel dispatch suppressed on this thread.
pub fn sequential_scope<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let prev = flag.replace(true);
        let out = f();
        flag.set(prev);
        out
    })
}

fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get)
}

/// Maps `f` over `items`, in parallel when enabled.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Maps `f` over the index range `0..n`, in parallel when enabled.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Returns the first `Some` produced by `f` over `items`.
///
/// The parallel path uses `find_map_first`, so the winner is the earliest
/// index, matching the sequential path; results stay deterministic.
pub fn find_map<T, U, F>(items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_matches_sequential() {
        let xs: Vec<u64> = (0..100).collect();
        let par = map(&xs, |x| x * x);
        let seq = sequential_scope(|| map(&xs, |x| x * x));
        assert_eq!(par, seq);
    }

    #[test]
    fn find_map_returns_first() {
        let xs: Vec<u64> = (0..1000).collect();
        let hit = find_map(&xs, |&x| if x >= 17 { Some(x) } else { None });
        assert_eq!(hit, Some(17));
    }
}
