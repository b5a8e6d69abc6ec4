//! Seeded workloads shared by the benchmarks.

use online_cake::random::{random_scenario, rng};
use online_cake::{Procedure, Scenario};

/// `count` random scenarios with `n` players and up to `segments` valuation
/// segments each, reproducible from `seed`.
pub fn workload(procedure: Procedure, n: usize, segments: usize, count: usize, seed: u64) -> Vec<Scenario> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_scenario(&mut r, procedure, n, segments))
        .collect()
}
