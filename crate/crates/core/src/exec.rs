//! Execution strategy for the data-parallel kernels.

use serde::{Deserialize, Serialize};

/// How enumeration-heavy kernels are scheduled.
///
/// `Parallel` uses the rayon global pool when the `parallel` feature is
/// enabled and silently degrades to `Sequential` otherwise. Results never
/// depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// The strategy actually used after feature gating.
    pub fn effective(self) -> Exec {
        if cfg!(feature = "parallel") {
            self
        } else {
            Exec::Sequential
        }
    }

    pub fn is_parallel(self) -> bool {
        self.effective() == Exec::Parallel
    }
}

/// Map `f` over `0..n` and collect, in index order.
pub fn map_range<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Map `f` over a slice and collect, in order.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Run `f` on every index in `0..n`.
pub fn for_range<F>(exec: Exec, n: usize, f: F)
where
    F: Fn(usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            (0..n).into_par_iter().for_each(f);
            return;
        }
    }
    let _ = exec;
    (0..n).for_each(f)
}
