//! Seeded generators for random instances: distributions with small
//! denominators, maps, point sets, and fractional covers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covers::CoverSpec;
use crate::dist::{FiniteMap, RationalDist};
use crate::element::GroundElement;
use crate::projections::{IndexSet, PointSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every point of `{0, ..., side - 1}^dimension` in lexicographic order.
pub fn grid(dimension: usize, side: i64) -> Vec<GroundElement> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dimension {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..side).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(GroundElement::new).collect()
}

/// `count` distinct points of the grid, in canonical order.
pub fn random_points<R: Rng>(rng: &mut R, dimension: usize, side: i64, count: usize) -> Vec<GroundElement> {
    let mut all = grid(dimension, side);
    all.shuffle(rng);
    all.truncate(count);
    all.sort();
    all
}

/// Random composition of `total` into `parts` positive integers.
fn composition<R: Rng>(rng: &mut R, total: u64, parts: usize) -> Vec<u64> {
    let mut cuts: Vec<u64> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u64> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// A distribution on at most `max_support` grid points whose probabilities
/// share a denominator `d <= max_denominator`.
pub fn random_dist<R: Rng>(
    rng: &mut R,
    dimension: usize,
    side: i64,
    max_support: usize,
    max_denominator: u64,
) -> RationalDist {
    let grid_size = (side as usize).pow(dimension as u32);
    let d = rng.gen_range(1..=max_denominator);
    let cap = max_support.min(d as usize).min(grid_size).max(1);
    let s = rng.gen_range(1..=cap);
    let counts = composition(rng, d, s);
    let support = random_points(rng, dimension, side, s);
    let probs = counts
        .iter()
        .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(d)))
        .collect();
    RationalDist::new(support, probs).expect("counts sum to the denominator")
}

/// A map from `domain` into scalars `0..codomain`.
pub fn random_map<'a, R, I>(rng: &mut R, domain: I, codomain: i64) -> FiniteMap
where
    R: Rng,
    I: IntoIterator<Item = &'a GroundElement>,
{
    let pairs: Vec<(GroundElement, GroundElement)> = domain
        .into_iter()
        .map(|x| (x.clone(), GroundElement::scalar(rng.gen_range(0..codomain))))
        .collect();
    FiniteMap::from_pairs(pairs).expect("domain elements are distinct")
}

/// A nonempty point set with between `min_size` and `max_size` points.
pub fn random_point_set<R: Rng>(rng: &mut R, dimension: usize, side: i64, min_size: usize, max_size: usize) -> PointSet {
    let grid_size = (side as usize).pow(dimension as u32);
    let hi = max_size.min(grid_size);
    let size = rng.gen_range(min_size.min(hi)..=hi);
    PointSet::new(dimension, random_points(rng, dimension, side, size)).expect("distinct points")
}

/// A random nonempty subset of `[n]`.
pub fn random_index_set<R: Rng>(rng: &mut R, n: usize) -> IndexSet {
    loop {
        let picked: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        if !picked.is_empty() {
            return IndexSet::new(picked).expect("distinct indices");
        }
    }
}

/// Random members of `[n]`, padded with singletons so every element is in
/// some member.
pub fn random_members<R: Rng>(rng: &mut R, n: usize, max_members: usize) -> Vec<IndexSet> {
    let count = rng.gen_range(1..=max_members.max(1));
    let mut members: Vec<IndexSet> = (0..count).map(|_| random_index_set(rng, n)).collect();
    let covered: BTreeSet<usize> = members.iter().flat_map(|m| m.indices().to_vec()).collect();
    for i in 1..=n {
        if !covered.contains(&i) {
            members.push(IndexSet::new(vec![i]).expect("single index"));
        }
    }
    members
}

/// A fractional cover whose weights share a denominator `d <= max_denominator`.
///
/// Weights start random in `[0, 1]`; each undercovered element then raises
/// the weight of a random member containing it until it is covered.
pub fn random_fractional_cover<R: Rng>(rng: &mut R, n: usize, max_members: usize, max_denominator: u64) -> CoverSpec {
    let members = random_members(rng, n, max_members);
    let d = rng.gen_range(1..=max_denominator);
    let mut numer: Vec<u64> = members.iter().map(|_| rng.gen_range(0..=d)).collect();
    for i in 1..=n {
        let holders: Vec<usize> = (0..members.len()).filter(|&j| members[j].contains(i)).collect();
        loop {
            let cov: u64 = holders.iter().map(|&j| numer[j]).sum();
            if cov >= d {
                break;
            }
            let j = *holders.choose(rng).expect("every element is held");
            numer[j] += 1;
        }
    }
    let weights = numer
        .iter()
        .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(d)))
        .collect();
    CoverSpec::new(n, members, Some(weights)).expect("valid members")
}

/// A random nonnegative weighting of `members` that covers `[n]`, produced by
/// drawing random weights and rescaling by the least coverage.
pub fn random_feasible_weights<R: Rng>(rng: &mut R, n: usize, members: &[IndexSet]) -> Vec<BigRational> {
    loop {
        let weights: Vec<BigRational> = members
            .iter()
            .map(|_| {
                if rng.gen_bool(0.3) {
                    BigRational::zero()
                } else {
                    BigRational::new(BigInt::from(rng.gen_range(1..=20u32)), BigInt::from(rng.gen_range(1..=12u32)))
                }
            })
            .collect();
        let mut cov = vec![BigRational::zero(); n];
        for (m, w) in members.iter().zip(&weights) {
            for &i in m.indices() {
                cov[i - 1] += w;
            }
        }
        let min = cov.iter().min().cloned().expect("n >= 1");
        if min.is_zero() {
            continue;
        }
        let scale = BigRational::one() / min;
        return weights.into_iter().map(|w| w * &scale).collect();
    }
}
