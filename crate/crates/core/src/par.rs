//! Order-preserving map over independent work items, data-parallel when the
//! `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for batch operations. Results are identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    /// Falls back to serial execution without the `parallel` feature.
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.iter().map(f).collect()
}
