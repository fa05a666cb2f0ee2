//! Data-parallel helpers with a sequential fallback.
//!
//! Compiled with the `parallel` feature (the default) these fan work out over
//! rayon; without it they run the same closures sequentially. Results are
//! identical either way: work items are indexed, per-item seeds derive from
//! the master seed, and outputs are collected in index order.

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Returns the smallest index in `0..n` whose result satisfies `keep`,
/// together with that result. Deterministic: the parallel path uses
/// `find_first`, which honors index order.
#[cfg(feature = "parallel")]
pub fn find_first_indexed<T, F>(n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .find_map_first(|i| f(i).map(|t| (i, t)))
}

/// Returns the smallest index in `0..n` whose result satisfies `keep`,
/// together with that result.
#[cfg(not(feature = "parallel"))]
pub fn find_first_indexed<T, F>(n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    (0..n).find_map(|i| f(i).map(|t| (i, t)))
}

/// True when this build fans work out over rayon.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Caps the global worker pool. A no-op on sequential builds; errors if the
/// pool was already initialized.
#[cfg(feature = "parallel")]
pub fn configure_threads(threads: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Caps the global worker pool. A no-op on sequential builds.
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_threads: usize) -> Result<(), String> {
    Ok(())
}

/// Derives a per-stream seed from a master seed (splitmix64 finalizer).
/// Stable across platforms and builds; used everywhere a worker, restart or
/// trial needs its own RNG.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let v = map_indexed(100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(v.len(), 100);
    }

    #[test]
    fn find_first_is_lowest_index() {
        let hit = find_first_indexed(1000, |i| if i % 17 == 3 { Some(i) } else { None });
        assert_eq!(hit, Some((3, 3)));
        let miss = find_first_indexed(10, |_| None::<usize>);
        assert_eq!(miss, None);
    }

    #[test]
    fn derived_seeds_differ_by_stream() {
        let a = derive_seed(42, 0);
        let b = derive_seed(42, 1);
        assert_ne!(a, b);
        assert_eq!(a, derive_seed(42, 0));
    }
}
