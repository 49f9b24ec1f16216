//! Sharded map/reduce with a sequential fallback.
//!
//! With the `parallel` feature, `workers > 1` runs shards on a dedicated
//! rayon pool of that size; `workers == 1` (or the feature disabled) runs
//! them in order on the calling thread. Shards are reduced in index order,
//! so results depend only on the shard layout, never on the worker count.

/// Number of workers to use when the caller asks for "all of them".
pub fn available_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Applies `map` to every shard index in `0..shards` and folds the results
/// left to right with `reduce`.
pub fn map_reduce<T, M, R>(workers: usize, shards: usize, identity: T, map: M, reduce: R) -> T
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let results = map_collect(workers, shards, map);
    results.into_iter().fold(identity, reduce)
}

/// Applies `map` to every shard index and returns the results in index order.
pub fn map_collect<T, M>(workers: usize, shards: usize, map: M) -> Vec<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 && shards > 1 {
        use rayon::prelude::*;
        let run = || (0..shards).into_par_iter().map(&map).collect::<Vec<T>>();
        return match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        };
    }
    let _ = workers;
    (0..shards).map(map).collect()
}
