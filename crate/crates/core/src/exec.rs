//! Order-preserving map over independent work items, run either on the
//! calling thread or on a rayon pool.

/// How independent items are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon pool; `threads: None` uses the global pool.
    #[cfg(feature = "parallel")]
    Parallel {
        threads: Option<usize>,
    },
    /// Parallel when the feature is compiled in, sequential otherwise.
    #[default]
    Auto,
}

impl Execution {
    /// `threads == Some(1)` always runs sequentially.
    pub fn with_threads(threads: Option<usize>) -> Self {
        match threads {
            Some(1) => Execution::Sequential,
            #[cfg(feature = "parallel")]
            t => Execution::Parallel { threads: t },
            #[cfg(not(feature = "parallel"))]
            _ => Execution::Sequential,
        }
    }

    /// `f` applied to each item; output order matches input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Auto => par_map(items, &f),
            #[cfg(not(feature = "parallel"))]
            Execution::Auto => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel { threads: None } => par_map(items, &f),
            #[cfg(feature = "parallel")]
            Execution::Parallel { threads: Some(n) } => {
                match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    Ok(pool) => pool.install(|| par_map(items, &f)),
                    Err(_) => items.iter().map(f).collect(),
                }
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: &F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}
