//! Seeded random cubic graphs by the pairing model with rejection.

use super::cycles::{girth, has_cycle_of_length_with_budget, CycleSearchError, DEFAULT_CYCLE_BUDGET};
use super::MarkedGraph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("cubic graphs need an even order of at least 4, got {0}")]
    BadOrder(usize),
    #[error("no acceptable graph after {0} attempts")]
    Exhausted(u64),
    #[error(transparent)]
    CycleSearch(#[from] CycleSearchError),
}

/// One pairing of `3n` half-edges; `None` on a loop or a repeated edge.
fn pairing(n: usize, rng: &mut ChaCha8Rng, points: &mut [usize]) -> Option<MarkedGraph> {
    points.shuffle(rng);
    let mut g = MarkedGraph::new(n);
    for pair in points.chunks_exact(2) {
        let (u, v) = (pair[0] / 3, pair[1] / 3);
        if u == v || g.has_edge(u, v) {
            return None;
        }
        g.add_edge(u, v).expect("pairing respects degree 3");
    }
    Some(g)
}

/// A connected cubic graph on `n` vertices with girth at least `min_girth`
/// and no cycle whose length lies in `forbidden`. The result depends only
/// on `(n, seed)` and the filters.
pub fn random_cubic(
    n: usize,
    seed: u64,
    min_girth: usize,
    forbidden: &[usize],
    max_attempts: u64,
) -> Result<MarkedGraph, GenerateError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenerateError::BadOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).collect();
    for _ in 0..max_attempts {
        points.sort_unstable();
        let Some(g) = pairing(n, &mut rng, &mut points) else {
            continue;
        };
        if !g.is_connected() || !girth(&g).at_least(min_girth) {
            continue;
        }
        let mut clean = true;
        for &k in forbidden {
            if has_cycle_of_length_with_budget(&g, k, DEFAULT_CYCLE_BUDGET)? {
                clean = false;
                break;
            }
        }
        if clean {
            return Ok(g);
        }
    }
    Err(GenerateError::Exhausted(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn deterministic_per_seed() {
        let a = random_cubic(14, 1, 5, &[], 100_000).unwrap();
        let b = random_cubic(14, 1, 5, &[], 100_000).unwrap();
        assert_eq!(a, b);
        assert!(a.is_cubic() && a.is_connected());
        assert!(girth(&a) >= Girth::Finite(5));
    }

    #[test]
    fn k4_is_the_only_quartic_order_cubic_graph() {
        assert_eq!(random_cubic(4, 0, 4, &[], 2_000), Err(GenerateError::Exhausted(2_000)));
        assert_eq!(girth(&random_cubic(4, 0, 3, &[], 2_000).unwrap()), Girth::Finite(3));
    }

    #[test]
    fn odd_order_rejected() {
        assert_eq!(random_cubic(7, 0, 3, &[], 10), Err(GenerateError::BadOrder(7)));
    }

    #[test]
    fn forbidden_lengths_respected() {
        for seed in 0..5 {
            let g = random_cubic(12, seed, 4, &[5], 200_000).unwrap();
            assert!(!has_cycle_of_length_with_budget(&g, 5, 1_000_000).unwrap());
        }
    }
}
