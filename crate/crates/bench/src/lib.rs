//! Fixed inputs shared by the benchmarks.

use entcard_core::{random, CoverSpec, IndexSet, PointSet, RationalDist};

/// Uniform distribution on `{0,1,2}^dimension` restricted to `count` points.
pub fn uniform_on_grid(dimension: usize, count: usize, seed: u64) -> RationalDist {
    let mut rng = random::rng(seed);
    let points = random::random_points(&mut rng, dimension, 3, count);
    RationalDist::uniform(points).expect("distinct points")
}

pub fn point_set(dimension: usize, count: usize, seed: u64) -> PointSet {
    let mut rng = random::rng(seed);
    PointSet::new(dimension, random::random_points(&mut rng, dimension, 3, count)).expect("distinct points")
}

/// Random members of `[n]` covering every element.
pub fn members(n: usize, count: usize, seed: u64) -> Vec<IndexSet> {
    let mut rng = random::rng(seed);
    random::random_members(&mut rng, n, count)
}

pub fn fractional_cover(n: usize, count: usize, seed: u64) -> CoverSpec {
    let mut rng = random::rng(seed);
    random::random_fractional_cover(&mut rng, n, count, 12)
}
