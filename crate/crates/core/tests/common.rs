#![allow(dead_code)]

use entcard_core::{BigRational, GroundElement, RationalDist};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Distribution on scalars `0..len` with integer weights (zeros allowed).
pub fn weighted_scalars(weights: &[u64]) -> Option<RationalDist> {
    let total: u64 = weights.iter().sum();
    if total == 0 {
        return None;
    }
    let support = (0..weights.len() as i64).map(GroundElement::scalar).collect();
    let probs = weights
        .iter()
        .map(|&w| BigRational::new(BigInt::from(w), BigInt::from(total)))
        .collect();
    Some(RationalDist::new(support, probs).unwrap())
}

/// Scalar distributions with at most `max_support` outcomes and integer
/// weights up to `max_weight`.
pub fn scalar_dist(max_support: usize, max_weight: u64) -> impl Strategy<Value = RationalDist> {
    prop::collection::vec(1..=max_weight, 1..=max_support).prop_map(|w| weighted_scalars(&w).unwrap())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
