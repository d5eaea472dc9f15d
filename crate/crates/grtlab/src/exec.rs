//! Data-parallel sweep primitives with a sequential fallback.
//!
//! Every exhaustive verification in the crate is a map/reduce over an index
//! range `0..n`. With the `parallel` feature (default) the dispatching
//! entry points run on rayon; without it they alias the `*_seq` versions.
//! The `*_seq` functions are always available so benchmarks can compare the
//! two paths directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest index failing `check`, or `None` if every index passes.
pub fn first_failure<F>(n: usize, check: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter(|&i| !check(i)).min()
    }
    #[cfg(not(feature = "parallel"))]
    {
        first_failure_seq(n, check)
    }
}

/// Sequential version of [`first_failure`].
pub fn first_failure_seq<F>(n: usize, check: F) -> Option<usize>
where
    F: Fn(usize) -> bool,
{
    (0..n).find(|&i| !check(i))
}

/// All indices failing `check`, ascending.
pub fn all_failures<F>(n: usize, check: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        let mut v: Vec<usize> = (0..n).into_par_iter().filter(|&i| !check(i)).collect();
        v.sort_unstable();
        v
    }
    #[cfg(not(feature = "parallel"))]
    {
        all_failures_seq(n, check)
    }
}

/// Sequential version of [`all_failures`].
pub fn all_failures_seq<F>(n: usize, check: F) -> Vec<usize>
where
    F: Fn(usize) -> bool,
{
    (0..n).filter(|&i| !check(i)).collect()
}

/// Maximum of `value` over the range; `0.0` for an empty range. Values must
/// not be NaN.
pub fn max_value<F>(n: usize, value: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(&value)
            .reduce(|| 0.0, f64::max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        max_value_seq(n, value)
    }
}

/// Sequential version of [`max_value`].
pub fn max_value_seq<F>(n: usize, value: F) -> f64
where
    F: Fn(usize) -> f64,
{
    (0..n).map(value).fold(0.0, f64::max)
}
