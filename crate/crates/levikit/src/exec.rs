//! Sequential/parallel execution helpers.
//!
//! Every hot loop in the crate funnels through these so the `parallel`
//! feature swaps rayon in and out in one place. The `_seq` variants are
//! always compiled; benches use them to compare both paths. All kernels
//! write disjoint output slots and all floating-point *sums* are reduced
//! sequentially in index order, so results are bit-identical regardless
//! of schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fill `out[i] = f(i)` sequentially.
pub fn fill_indexed_seq<F>(out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync,
{
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = f(i);
    }
}

/// Fill `out[i] = f(i)`, in parallel when the `parallel` feature is on.
pub fn fill_indexed<F>(out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        out.par_iter_mut()
            .enumerate()
            .for_each(|(i, slot)| *slot = f(i));
    }
    #[cfg(not(feature = "parallel"))]
    {
        fill_indexed_seq(out, f);
    }
}

/// Map `f` over `0..n` collecting results in index order, sequentially.
pub fn map_collect_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..n).map(f).collect()
}

/// Map `f` over `0..n` collecting results in index order.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_collect_seq(n, f)
    }
}

/// Maximum of `f(i)` over `0..n`. Max is an exact reduction, so the
/// parallel result is bit-identical to the sequential one.
pub fn max_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| f64::NEG_INFINITY, f64::max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(f64::NEG_INFINITY, f64::max)
    }
}
