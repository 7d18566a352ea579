//! Data-parallel plumbing. With the `parallel` feature (default) work is
//! spread over a rayon pool sized by the `NSD_FORGE_THREADS` environment
//! variable; without it everything runs sequentially through the same API.

#[cfg(feature = "parallel")]
use std::sync::OnceLock;

/// Effective worker count. `NSD_FORGE_THREADS=1` forces sequential runs
/// even in parallel builds.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        static THREADS: OnceLock<usize> = OnceLock::new();
        *THREADS.get_or_init(|| {
            let requested = std::env::var("NSD_FORGE_THREADS")
                .ok()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&t| t > 0);
            match requested {
                Some(t) => {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
                    t
                }
                None => rayon::current_num_threads(),
            }
        })
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Order-preserving parallel map.
#[cfg(feature = "parallel")]
pub fn map<T: Sync + Send, R: Send>(items: Vec<T>, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    if threads() <= 1 {
        return map_seq(items, f);
    }
    items.par_iter().map(&f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync + Send, R: Send>(items: Vec<T>, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    map_seq(items, f)
}

/// Sequential twin of [`map`], always available for comparison runs.
pub fn map_seq<T, R>(items: Vec<T>, f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_matches_sequential() {
        let xs: Vec<u64> = (0..500).collect();
        let par = map(xs.clone(), |&x| x * x + 1);
        let seq = map_seq(xs, |&x| x * x + 1);
        assert_eq!(par, seq);
    }
}
