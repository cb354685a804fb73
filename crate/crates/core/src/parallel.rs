//! Data-parallel helpers. With the `parallel` feature (default) these run on
//! the rayon pool; without it they fall back to plain sequential iterators.
//! Results are always returned in input order, so outputs do not depend on
//! the number of workers.

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }

    pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn with_workers<R: Send, F: FnOnce() -> R + Send>(workers: Option<usize>, f: F) -> R {
        match workers {
            Some(w) if w > 0 => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            _ => f(),
        }
    }

    pub fn current_workers() -> usize {
        rayon::current_num_threads()
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        (0..n).map(f).collect()
    }

    pub fn with_workers<R: Send, F: FnOnce() -> R + Send>(_workers: Option<usize>, f: F) -> R {
        f()
    }

    pub fn current_workers() -> usize {
        1
    }
}

pub use imp::{current_workers, map, map_range, with_workers};

/// Sequential reference path, always available (used by benches and tests).
pub fn map_seq<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Row-major evaluation of `f(u_i, v_j)` over a tensor grid.
pub fn grid<F>(us: &[f64], vs: &[f64], f: F) -> Vec<Vec<f64>>
where
    F: Fn(f64, f64) -> f64 + Sync + Send,
{
    map(us, |&u| vs.iter().map(|&v| f(u, v)).collect())
}
