//! Runtime switch between sequential and rayon-backed execution.
//!
//! Analyzers that sweep independent (pattern, length) cells accept an
//! [`ExecMode`]. Results are collected in input order, so both modes
//! produce identical output. When the crate is built without the
//! `parallel` feature, [`ExecMode::Parallel`] degrades to sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Configure the global worker pool. `jobs = 0` keeps the library default;
/// `jobs = 1` callers should prefer [`ExecMode::Sequential`]. Without the
/// `parallel` feature this is a no-op. Returns whether a pool setting was
/// applied.
pub fn configure_thread_pool(jobs: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            return rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global()
                .is_ok();
        }
        false
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        false
    }
}

/// Order-preserving map over a slice.
pub(crate) fn map_collect<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.iter().map(f).collect(),
    }
}

/// Order-preserving map over an index range.
pub(crate) fn map_range<R, F>(mode: ExecMode, range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => range.map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => range.into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => range.map(f).collect(),
    }
}
