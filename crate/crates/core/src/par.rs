//! Execution mode for the data-parallel kernels.
//!
//! With the `parallel` feature (on by default) `Execution::Parallel` runs on
//! the rayon pool; without it every mode runs sequentially. Results never
//! depend on the mode: maps preserve input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    pub fn map<T, R, Fun>(self, items: &[T], f: Fun) -> Vec<R>
    where
        T: Sync,
        R: Send,
        Fun: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    pub fn join<A, B, FA, FB>(self, a: FA, b: FB) -> (A, B)
    where
        A: Send,
        B: Send,
        FA: FnOnce() -> A + Send,
        FB: FnOnce() -> B + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => rayon::join(a, b),
            _ => (a(), b()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x * x + 1;
        assert_eq!(Execution::Parallel.map(&xs, f), Execution::Sequential.map(&xs, f));
        assert_eq!(Execution::Parallel.join(|| 1, || 2), (1, 2));
    }
}
