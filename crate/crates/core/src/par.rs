//! Data-parallel primitives with a sequential fallback.
//!
//! With the `parallel` feature (default) the indexed maps fan out over rayon;
//! without it they run in a plain loop. Reductions always use a fixed
//! pairwise tree with midpoint splits, so every configuration — any thread
//! count, or no threads at all — produces bit-identical floating-point
//! results.

/// Evaluate `f` at `0..n` and collect results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluate `f` at `0..n` and collect results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Number of worker threads the indexed maps will use.
#[cfg(feature = "parallel")]
pub fn threads() -> usize {
    rayon::current_num_threads()
}

/// Cap the worker pool at `n` threads. Effective only before the first
/// parallel operation in the process (the pool is global); returns whether
/// the cap was applied. Results are bit-identical either way — this is a
/// resource control, not a numerics control.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .is_ok()
}

/// Cap the worker pool at `n` threads. Without the `parallel` feature there
/// is exactly one worker; any request is trivially satisfied.
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) -> bool {
    true
}

/// Number of worker threads the indexed maps will use.
#[cfg(not(feature = "parallel"))]
pub fn threads() -> usize {
    1
}

/// Pairwise fold with midpoint splits. The association is a fixed balanced
/// tree over the slice, so the result does not depend on evaluation order.
pub fn tree_fold<T: Clone>(items: &[T], combine: &impl Fn(&T, &T) -> T) -> Option<T> {
    match items.len() {
        0 => None,
        1 => Some(items[0].clone()),
        n => {
            let (lo, hi) = items.split_at(n / 2);
            let a = tree_fold(lo, combine).unwrap();
            let b = tree_fold(hi, combine).unwrap();
            Some(combine(&a, &b))
        }
    }
}

/// Tree sum of a slice of floats.
pub fn tree_sum(items: &[f64]) -> f64 {
    tree_fold(items, &|a: &f64, b: &f64| a + b).unwrap_or(0.0)
}

/// Mean of a slice via the tree sum; empty slices give 0.
pub fn tree_mean(items: &[f64]) -> f64 {
    if items.is_empty() {
        0.0
    } else {
        tree_sum(items) / items.len() as f64
    }
}

/// Index and value of the maximum, ignoring NaN, ties broken toward the
/// smallest index. Returns `None` when every entry is NaN or the input is
/// empty.
pub fn argmax<I: IntoIterator<Item = f64>>(scores: I) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, s) in scores.into_iter().enumerate() {
        if s.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if s <= b => {}
            _ => best = Some((i, s)),
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_preserves_order() {
        let v = map_indexed(5, |i| i * i);
        assert_eq!(v, vec![0, 1, 4, 9, 16]);
    }

    #[test]
    fn tree_sum_matches_exact_on_integers() {
        let items: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(tree_sum(&items), 5050.0);
    }

    #[test]
    fn tree_sum_association_is_fixed() {
        // Same slice, same result, independent of how many times we call it.
        let items: Vec<f64> = (0..1023).map(|i| ((i * 2654435761_u64) % 1000) as f64 * 1e-3).collect();
        let a = tree_sum(&items);
        let b = tree_sum(&items);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn halving_every_item_halves_a_tree_sum_exactly() {
        let items: Vec<f64> = (0..257).map(|i| (i as f64).sqrt() + 0.1).collect();
        let halved: Vec<f64> = items.iter().map(|x| x / 2.0).collect();
        assert_eq!((tree_sum(&items) / 2.0).to_bits(), tree_sum(&halved).to_bits());
    }

    #[test]
    fn argmax_breaks_ties_low_and_skips_nan() {
        assert_eq!(argmax([f64::NAN, 2.0, 2.0, 1.0]), Some((1, 2.0)));
        assert_eq!(argmax([] as [f64; 0]), None);
    }
}
