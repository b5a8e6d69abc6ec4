//! Seeded random scenarios for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::procedures::{Knowledge, Procedure, Scenario};
use crate::rational::{int, one, rat, zero, Rational};
use crate::valuation::Valuation;

/// Breakpoints are drawn from multiples of `1/DENOMINATOR`.
const DENOMINATOR: i64 = 24;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A piecewise-constant valuation with `1..=max_segments` segments and integer
/// segment values in `0..=9`, at least one of them positive.
pub fn random_valuation(rng: &mut impl Rng, max_segments: usize) -> Valuation {
    let segments = rng.random_range(1..=max_segments.max(1));
    let mut cuts: Vec<i64> = Vec::new();
    while cuts.len() < segments - 1 {
        let c = rng.random_range(1..DENOMINATOR);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut points: Vec<Rational> = vec![zero()];
    points.extend(cuts.into_iter().map(|c| rat(c, DENOMINATOR)));
    points.push(one());
    let mut values: Vec<i64> = (0..segments).map(|_| rng.random_range(0..=9)).collect();
    if values.iter().all(|v| *v == 0) {
        let i = rng.random_range(0..segments);
        values[i] = rng.random_range(1..=9);
    }
    let raw: Vec<_> = points
        .windows(2)
        .zip(values)
        .map(|(w, v)| (w[0].clone(), w[1].clone(), int(v)))
        .collect();
    Valuation::from_segments(&raw).expect("generated valuation is well formed")
}

/// `n` truthful players with random valuations and a random arrival order.
/// Moving-knife windows and bounded-variant parameters are drawn as well.
pub fn random_scenario(
    rng: &mut impl Rng,
    procedure: Procedure,
    n: usize,
    max_segments: usize,
) -> Scenario {
    let valuations = (0..n).map(|_| random_valuation(rng, max_segments)).collect();
    let mut s = Scenario::new(procedure, valuations);
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        s.arrival_order.swap(i, j);
    }
    if procedure == Procedure::MovingKnife {
        s.window = Some(rng.random_range(2..=n));
    }
    if procedure == Procedure::BoundedCutAndChoose {
        s.n_max = Some(n + rng.random_range(0..=2));
        s.knowledge = Knowledge::ALL[rng.random_range(0..Knowledge::ALL.len())];
    }
    s
}
