//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs on
//! the rayon pool; without it, both modes take the sequential path. Results
//! are always collected in input order, and every reduction used in this
//! crate is exact and commutative, so output never depends on the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Whether the parallel path is compiled in.
pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");

pub(crate) fn map_collect<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

pub(crate) fn map_reduce<T, R, F, Z, A>(exec: Execution, items: &[T], f: F, zero: Z, add: A) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    Z: Fn() -> R + Sync + Send,
    A: Fn(R, R) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).reduce(zero, add),
        _ => items.iter().map(f).fold(zero(), add),
    }
}

pub(crate) fn try_map_collect<T, R, E, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map_collect(Execution::Sequential, &items, |x| x * x);
        let b = map_collect(Execution::Parallel, &items, |x| x * x);
        assert_eq!(a, b);
        let s1 = map_reduce(Execution::Sequential, &items, |&x| x, || 0, |a, b| a + b);
        let s2 = map_reduce(Execution::Parallel, &items, |&x| x, || 0, |a, b| a + b);
        assert_eq!(s1, 499_500);
        assert_eq!(s1, s2);
    }
}
