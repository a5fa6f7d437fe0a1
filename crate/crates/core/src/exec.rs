//! Sequential / parallel execution switch for exhaustive sweeps.

use std::str::FromStr;

/// How a sweep distributes its work.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and silently
/// degrades to `Sequential` otherwise, so results never depend on the mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this mode will actually run on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items` and folds the results with `merge`.
    ///
    /// `merge` must be associative and commutative with `identity` as its
    /// unit; the parallel path gives no ordering guarantee.
    pub fn map_reduce<I, T, F, M, Z>(self, items: Vec<I>, identity: Z, f: F, merge: M) -> T
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
        Z: Fn() -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).reduce(identity, merge);
        }
        items.into_iter().map(f).fold(identity(), merge)
    }

    /// Maps `f` over `items`, preserving input order in the output.
    pub fn map<I, T, F>(self, items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }
}

impl FromStr for Exec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "seq" | "sequential" => Ok(Exec::Sequential),
            "par" | "parallel" => Ok(Exec::Parallel),
            other => Err(format!("unknown execution mode `{other}`")),
        }
    }
}
