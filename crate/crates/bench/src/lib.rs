//! Benchmark fixtures shared by the criterion suites.

use cubicdom::graph::{random_cubic, MarkedGraph};

/// A seeded connected cubic graph of girth at least 5.
pub fn cubic_fixture(n: usize, seed: u64) -> MarkedGraph {
    random_cubic(n, seed, 5, &[], 10_000_000).expect("girth-5 cubic graphs exist for n >= 10")
}
