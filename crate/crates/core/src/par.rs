//! Data-parallel helpers. With the `parallel` feature they run on rayon unless sequential
//! mode is forced at runtime (used by the benchmarks); without it they are plain loops.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces (or releases) sequential execution for every helper in this module.
pub fn set_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

/// True when helpers currently fan out over rayon.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Smallest index in `lo..hi` satisfying `pred`.
pub fn find_first<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (lo..hi).into_par_iter().find_first(|&i| pred(i));
    }
    (lo..hi).find(|&i| pred(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let par = map(&xs, |x| x * x);
        set_sequential(true);
        let seq = map(&xs, |x| x * x);
        let first = find_first(0, 1000, |i| i * i > 500);
        set_sequential(false);
        assert_eq!(par, seq);
        assert_eq!(first, find_first(0, 1000, |i| i * i > 500));
        assert_eq!(first, Some(23));
        assert_eq!(map_range(4, |i| i + 1), vec![1, 2, 3, 4]);
    }
}
