//! Data-parallel helpers.
//!
//! With the `parallel` feature these dispatch to rayon; without it they run
//! the same closures sequentially. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many elements per block the sequential loop wins.
#[cfg(feature = "parallel")]
pub(crate) const MIN_PAR_BLOCK: usize = 2048;

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
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

/// Maps `f` over `0..len`, preserving order.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// `dst[i] op= src[i]` elementwise, split across threads for long slices.
pub(crate) fn zip_apply<A, B, F>(dst: &mut [A], src: &[B], f: F)
where
    A: Send,
    B: Sync,
    F: Fn(&mut A, &B) + Sync + Send,
{
    debug_assert!(dst.len() <= src.len());
    #[cfg(feature = "parallel")]
    {
        if dst.len() >= MIN_PAR_BLOCK {
            dst.par_iter_mut()
                .with_min_len(MIN_PAR_BLOCK / 4)
                .zip(src.par_iter())
                .for_each(|(a, b)| f(a, b));
            return;
        }
    }
    for (a, b) in dst.iter_mut().zip(src) {
        f(a, b);
    }
}

/// Whether this build dispatches to rayon.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u64> = (0..10_000).collect();
        let ys = map(&xs, |x| x * x);
        assert!(ys.iter().enumerate().all(|(i, &y)| y == (i * i) as u64));
        assert_eq!(map_range(5, |i| i + 1), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn zip_apply_long_and_short() {
        for len in [10, 5000] {
            let mut a = vec![1u64; len];
            let b: Vec<u64> = (0..len as u64).collect();
            zip_apply(&mut a, &b, |x, y| *x += *y);
            assert!(a.iter().enumerate().all(|(i, &v)| v == i as u64 + 1));
        }
    }
}
