//! Data-parallel helpers. With the `parallel` feature (the default) the
//! indexed maps run on rayon's global pool; without it they fall back to
//! plain sequential iteration with the same results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` and collects results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<U: Send>(n: usize, f: impl Fn(usize) -> U + Send + Sync) -> Vec<U> {
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n` and collects results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U>(n: usize, f: impl Fn(usize) -> U) -> Vec<U> {
    (0..n).map(f).collect()
}

/// Always-sequential variant, kept callable so benchmarks can compare the
/// two execution modes within one build.
pub fn map_indexed_seq<U>(n: usize, f: impl Fn(usize) -> U) -> Vec<U> {
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let sq = |i: usize| i * i;
        assert_eq!(map_indexed(100, sq), map_indexed_seq(100, sq));
        assert_eq!(map_indexed(0, sq), Vec::<usize>::new());
    }
}
