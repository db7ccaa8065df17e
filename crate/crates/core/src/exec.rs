//! Execution policy for the data-parallel loops (term generation, verifier
//! accumulation, quadruple scans).
//!
//! Every parallel path produces results in the same order as the sequential
//! one, so outputs are bit-identical across policies and thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Evaluates `f(i)` for `i in 0..len`, returning results in index order.
pub(crate) fn map_indexed<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
        _ => (0..len).map(f).collect(),
    }
}

/// Splits `0..len` into a fixed number of contiguous chunks that depends only
/// on `len` and `max_chunks`.
pub(crate) fn chunk_bounds(len: usize, max_chunks: usize) -> Vec<(usize, usize)> {
    if len == 0 {
        return Vec::new();
    }
    let chunks = max_chunks.clamp(1, len);
    let size = len.div_ceil(chunks);
    (0..len)
        .step_by(size)
        .map(|start| (start, (start + size).min(len)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range() {
        for len in [0usize, 1, 5, 64, 65, 1000] {
            let b = chunk_bounds(len, 64);
            let covered: usize = b.iter().map(|(s, e)| e - s).sum();
            assert_eq!(covered, len);
            assert!(b.len() <= 64);
            for w in b.windows(2) {
                assert_eq!(w[0].1, w[1].0);
            }
        }
    }

    #[test]
    fn policies_agree() {
        let a = map_indexed(Exec::Sequential, 100, |i| i * i);
        let b = map_indexed(Exec::Parallel, 100, |i| i * i);
        assert_eq!(a, b);
    }
}
