//! Order-preserving data-parallel helpers.
//!
//! With the `parallel` feature (default) these fan work out over rayon;
//! without it they run plain sequential loops. Both paths preserve input
//! order, so callers are deterministic regardless of feature selection.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over a slice, preserving order.
pub(crate) fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Maps a fallible `f` over a slice, preserving order; the first error
/// (in input order) wins.
pub(crate) fn try_map_slice<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        // Collect everything first: rayon's short-circuiting collect
        // would surface whichever error finished first, not the first
        // in input order.
        let results: Vec<Result<R, E>> = items.par_iter().map(f).collect();
        results.into_iter().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Flat-maps `f` over a slice, preserving order of both levels.
pub(crate) fn flat_map_slice<T, R, F, I>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    I: IntoIterator<Item = R> + Send,
    F: Fn(&T) -> I + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let nested: Vec<Vec<R>> = items
            .par_iter()
            .map(|t| f(t).into_iter().collect())
            .collect();
        nested.into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().flat_map(f).collect()
    }
}
