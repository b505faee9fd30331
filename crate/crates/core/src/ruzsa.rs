//! k-Ruzsa sets: all length-k vectors over the support of a distribution in
//! which each outcome `x_i` occurs exactly `k * p_i` times.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::dist::{entropy, minimal_suitable_k, pushforward, type_counts, FiniteMap, LogBase, RationalDist};
use crate::element::GroundElement;
use crate::error::{Error, Result};
use crate::rational::{format_rational, from_uint, ln_biguint};
use crate::report::{CheckReport, Quantity, Verdict};

/// Default cap on the number of vectors any enumeration-based check visits.
pub const DEFAULT_ENUM_LIMIT: u64 = 1_000_000;

/// A distribution together with a suitable length `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuzsaSpec {
    dist: RationalDist,
    k: u64,
    counts: Vec<u64>,
}

impl RuzsaSpec {
    pub fn new(dist: RationalDist, k: u64) -> Result<Self> {
        let counts = match type_counts(&dist, k) {
            Some(c) if k > 0 => c,
            _ => {
                return Err(Error::Suitability { k, minimal: minimal_suitable_k(&dist).to_string() });
            }
        };
        Ok(RuzsaSpec { dist, k, counts })
    }

    /// Spec at the smallest suitable `k`, if it fits in a `u64`.
    pub fn minimal(dist: RationalDist) -> Result<Self> {
        let k = minimal_suitable_k(&dist)
            .to_u64()
            .ok_or_else(|| Error::Suitability { k: 0, minimal: minimal_suitable_k(&dist).to_string() })?;
        RuzsaSpec::new(dist, k)
    }

    pub fn dist(&self) -> &RationalDist {
        &self.dist
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Occurrence counts `k * p_i`, parallel to the support.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// A vector of length k over the ground set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct RuzsaVector(pub Vec<GroundElement>);

impl RuzsaVector {
    pub fn entries(&self) -> &[GroundElement] {
        &self.0
    }

    /// Exact membership test in `R_k(X)`.
    pub fn is_member(&self, spec: &RuzsaSpec) -> bool {
        if self.0.len() as u64 != spec.k {
            return false;
        }
        let mut seen: HashMap<&GroundElement, u64> = HashMap::new();
        for x in &self.0 {
            *seen.entry(x).or_default() += 1;
        }
        seen.len() == spec.dist.len()
            && spec
                .dist
                .support()
                .iter()
                .zip(&spec.counts)
                .all(|(x, &c)| seen.get(x).copied() == Some(c))
    }
}

/// Multinomial coefficient `(sum c)! / prod(c!)`.
pub fn multinomial(counts: &[u64]) -> BigUint {
    let mut result = BigUint::one();
    let mut placed: u64 = 0;
    for &c in counts {
        // running value is C(placed + j, j) times the earlier factors
        let mut binom = BigUint::one();
        for j in 1..=c {
            binom = binom * BigUint::from(placed + j) / BigUint::from(j);
        }
        result *= binom;
        placed += c;
    }
    result
}

/// Closed-form `|R_k(X)|`.
pub fn ruzsa_size(spec: &RuzsaSpec) -> BigUint {
    multinomial(&spec.counts)
}

/// Lexicographic successor over a sequence of symbol indices. Returns false
/// once the sequence is the last (non-increasing) arrangement.
fn next_arrangement(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every arrangement of a multiset of symbol indices, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Arrangements {
    current: Vec<usize>,
    started: bool,
    finished: bool,
}

impl Arrangements {
    pub fn new(counts: &[u64]) -> Self {
        let current = counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect();
        Arrangements { current, started: false, finished: false }
    }
}

impl Iterator for Arrangements {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.finished {
            return None;
        }
        if self.started && !next_arrangement(&mut self.current) {
            self.finished = true;
            return None;
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Stream over `R_k(X)` in lexicographic order of support indices.
#[derive(Debug, Clone)]
pub struct RuzsaIter {
    support: Vec<GroundElement>,
    inner: Arrangements,
}

impl Iterator for RuzsaIter {
    type Item = RuzsaVector;

    fn next(&mut self) -> Option<RuzsaVector> {
        let idx = self.inner.next()?;
        Some(RuzsaVector(idx.into_iter().map(|i| self.support[i].clone()).collect()))
    }
}

fn guard(size: &BigUint, limit: &BigUint) -> Result<()> {
    if size > limit {
        return Err(Error::SizeGuard { size: size.to_string(), limit: limit.to_string() });
    }
    Ok(())
}

/// Enumerates `R_k(X)` after checking its closed-form size against `limit`.
pub fn ruzsa_enumerate(spec: &RuzsaSpec, limit: &BigUint) -> Result<RuzsaIter> {
    guard(&ruzsa_size(spec), limit)?;
    Ok(RuzsaIter { support: spec.dist.support().to_vec(), inner: Arrangements::new(&spec.counts) })
}

const MAX_WITNESSES: usize = 5;

/// Checks `f^k(R_k(X)) = R_k(f(X))` by enumerating both sides separately.
///
/// The left side is the deduplicated image of every vector of `R_k(X)`; the
/// right side is enumerated directly from the pushforward distribution.
pub fn verify_commutation(f: &FiniteMap, spec: &RuzsaSpec, limit: &BigUint) -> Result<CheckReport> {
    let image_dist = pushforward(f, &spec.dist)?;
    let image_spec = RuzsaSpec::new(image_dist, spec.k)?;
    let source_size = ruzsa_size(spec);
    guard(&source_size, limit)?;
    guard(&ruzsa_size(&image_spec), limit)?;

    let mut mapped: BTreeSet<Vec<GroundElement>> = BTreeSet::new();
    for v in ruzsa_enumerate(spec, limit)? {
        mapped.insert(f.apply_power(&v.0)?);
    }
    let direct: BTreeSet<Vec<GroundElement>> = ruzsa_enumerate(&image_spec, limit)?.map(|v| v.0).collect();

    let equal = mapped == direct;
    let mut report = CheckReport::new(
        "commutation",
        Verdict::from_bool(equal),
        Quantity::Integer(BigUint::from(mapped.len())),
        Quantity::Integer(BigUint::from(direct.len())),
    )
    .detail("k", spec.k)
    .detail("source_size", source_size.to_string())
    .detail("image_size", mapped.len().to_string())
    .detail("direct_size", direct.len().to_string());
    for v in mapped.difference(&direct).take(MAX_WITNESSES) {
        report = report.witness(json!({"only_in_image": v}));
    }
    for v in direct.difference(&mapped).take(MAX_WITNESSES) {
        report = report.witness(json!({"only_in_direct": v}));
    }
    Ok(report)
}

/// Lifts `y` in `R_k(f(X))` to some `x` in `R_k(X)` with `f^k(x) = y`.
///
/// For each image value, its positions in `y` are taken in increasing order
/// and filled with consecutive blocks of its preimages, `k * Pr(X = x)` copies
/// each, preimages following the support order of `X`.
pub fn preimage_lift(f: &FiniteMap, spec: &RuzsaSpec, y: &RuzsaVector) -> Result<RuzsaVector> {
    let image_spec = RuzsaSpec::new(pushforward(f, &spec.dist)?, spec.k)?;
    if !y.is_member(&image_spec) {
        return Err(Error::Membership("vector is not in the Ruzsa set of the image distribution".into()));
    }
    // preimage blocks per image value, in support order of X
    let mut blocks: HashMap<&GroundElement, Vec<(&GroundElement, u64)>> = HashMap::new();
    for (x, &c) in spec.dist.support().iter().zip(&spec.counts) {
        blocks.entry(f.apply(x)?).or_default().push((x, c));
    }
    let mut cursor: HashMap<&GroundElement, (usize, u64)> = HashMap::new();
    let mut out = Vec::with_capacity(y.0.len());
    for v in &y.0 {
        let list = &blocks[v];
        let (block, used) = cursor.entry(v).or_insert((0, 0));
        while *used == list[*block].1 {
            *block += 1;
            *used = 0;
        }
        out.push(list[*block].0.clone());
        *used += 1;
    }
    Ok(RuzsaVector(out))
}

/// Exact method-of-types sandwich
/// `|R_k| <= prod p_i^(-k p_i) <= (k+1)^(n-1) |R_k|`.
pub fn type_bound_check(spec: &RuzsaSpec) -> CheckReport {
    let size = ruzsa_size(spec);
    let size_q = from_uint(&size);
    let mut t = BigRational::one();
    for (p, &c) in spec.dist.probs().iter().zip(&spec.counts) {
        t *= num_traits::pow(p.recip(), c as usize);
    }
    let n = spec.dist.len();
    let factor = BigUint::from(spec.k + 1).pow((n - 1) as u32);
    let upper = from_uint(&factor) * &size_q;
    let lower_ok = size_q <= t;
    let upper_ok = t <= upper;
    CheckReport::new("type_bound", Verdict::from_bool(lower_ok && upper_ok), Quantity::Integer(size), Quantity::Rational(t.clone()))
        .detail("k", spec.k)
        .detail("support_size", n)
        .detail("polynomial_factor", factor.to_string())
        .detail("lower_holds", lower_ok)
        .detail("upper_holds", upper_ok)
        .detail("type_over_size", format_rational(&(&t / &size_q)))
        .detail("upper_over_type", format_rational(&(&upper / &t)))
}

/// One row of a convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub k: u64,
    pub size: String,
    pub log_size_per_k: f64,
    pub entropy: f64,
    /// `entropy - log|R_k| / k`
    pub gap: f64,
    /// `(n - 1) log(k + 1) / k`
    pub envelope: f64,
    pub within_envelope: bool,
}

/// `log|R_k| / k` against `H(X)` for each listed `k`.
pub fn convergence_profile(
    dist: &RationalDist,
    ks: &[u64],
    base: LogBase,
    tolerance: f64,
) -> Result<Vec<ConvergenceRow>> {
    let h = entropy(dist, base);
    let n = dist.len() as f64;
    ks.iter()
        .map(|&k| {
            let spec = RuzsaSpec::new(dist.clone(), k)?;
            let size = ruzsa_size(&spec);
            let per_k = base.from_ln(ln_biguint(&size)) / k as f64;
            let gap = h - per_k;
            let envelope = (n - 1.0) * base.log((k + 1) as f64) / k as f64;
            Ok(ConvergenceRow {
                k,
                size: size.to_string(),
                log_size_per_k: per_k,
                entropy: h,
                gap,
                envelope,
                within_envelope: gap >= -tolerance && gap <= envelope + tolerance,
            })
        })
        .collect()
}

/// All multiples of the minimal suitable k up to `k_max`.
pub fn suitable_ks(dist: &RationalDist, k_max: u64) -> Vec<u64> {
    match minimal_suitable_k(dist).to_u64() {
        Some(k0) => (1..).map(|m| m * k0).take_while(|&k| k <= k_max).collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn scalars(xs: &[i64]) -> Vec<GroundElement> {
        xs.iter().map(|&x| GroundElement::scalar(x)).collect()
    }

    fn dist(xs: &[i64], ps: &[(i64, i64)]) -> RationalDist {
        RationalDist::new(scalars(xs), ps.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
    }

    fn limit() -> BigUint {
        BigUint::from(DEFAULT_ENUM_LIMIT)
    }

    #[test]
    fn size_examples() {
        let half = dist(&[0, 1], &[(1, 2), (1, 2)]);
        assert_eq!(ruzsa_size(&RuzsaSpec::new(half, 4).unwrap()), BigUint::from(6u32));
        let third = dist(&[0, 1], &[(1, 3), (2, 3)]);
        assert_eq!(ruzsa_size(&RuzsaSpec::new(third, 3).unwrap()), BigUint::from(3u32));
        let sixth = dist(&[1, 2, 3], &[(1, 6), (1, 3), (1, 2)]);
        assert_eq!(ruzsa_size(&RuzsaSpec::new(sixth, 6).unwrap()), BigUint::from(60u32));
    }

    #[test]
    fn unsuitable_k_is_rejected() {
        let third = dist(&[0, 1], &[(1, 3), (2, 3)]);
        assert!(matches!(RuzsaSpec::new(third.clone(), 4), Err(Error::Suitability { .. })));
        assert!(matches!(RuzsaSpec::new(third, 0), Err(Error::Suitability { .. })));
    }

    #[test]
    fn enumerate_examples() {
        let half = RuzsaSpec::new(dist(&[10, 20], &[(1, 2), (1, 2)]), 2).unwrap();
        let got: Vec<_> = ruzsa_enumerate(&half, &limit()).unwrap().collect();
        assert_eq!(
            got,
            vec![RuzsaVector(scalars(&[10, 20])), RuzsaVector(scalars(&[20, 10]))]
        );

        let point = RuzsaSpec::new(RationalDist::point(5.into()), 3).unwrap();
        let got: Vec<_> = ruzsa_enumerate(&point, &limit()).unwrap().collect();
        assert_eq!(got, vec![RuzsaVector(scalars(&[5, 5, 5]))]);

        let third = RuzsaSpec::new(dist(&[1, 2], &[(1, 3), (2, 3)]), 3).unwrap();
        let got: Vec<_> = ruzsa_enumerate(&third, &limit()).unwrap().collect();
        assert_eq!(
            got,
            vec![
                RuzsaVector(scalars(&[1, 2, 2])),
                RuzsaVector(scalars(&[2, 1, 2])),
                RuzsaVector(scalars(&[2, 2, 1])),
            ]
        );
        assert!(got.iter().all(|v| v.is_member(&third)));
    }

    #[test]
    fn enumeration_guard() {
        let spec = RuzsaSpec::new(dist(&[0, 1], &[(1, 2), (1, 2)]), 4).unwrap();
        let err = ruzsa_enumerate(&spec, &BigUint::from(5u32)).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { .. }));
        assert_eq!(ruzsa_enumerate(&spec, &BigUint::from(6u32)).unwrap().count(), 6);
    }

    #[test]
    fn commutation_examples() {
        let x = RationalDist::uniform(scalars(&[1, 2, 3, 4])).unwrap();
        let id = FiniteMap::identity(x.support());
        let spec = RuzsaSpec::new(x.clone(), 4).unwrap();
        let r = verify_commutation(&id, &spec, &limit()).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, Quantity::Integer(BigUint::from(24u32)));

        let parity = FiniteMap::from_fn(x.support(), |v| GroundElement::scalar(v.coords()[0] % 2));
        let r = verify_commutation(&parity, &spec, &limit()).unwrap();
        assert!(r.holds());
        assert_eq!(r.details["source_size"], "24");
        assert_eq!(r.lhs, Quantity::Integer(BigUint::from(6u32)));
        assert_eq!(r.rhs, Quantity::Integer(BigUint::from(6u32)));

        let x = dist(&[1, 2, 3], &[(1, 6), (1, 3), (1, 2)]);
        let f = FiniteMap::from_pairs([(1.into(), 10.into()), (2.into(), 10.into()), (3.into(), 20.into())]).unwrap();
        let r = verify_commutation(&f, &RuzsaSpec::new(x, 6).unwrap(), &limit()).unwrap();
        assert!(r.holds());
        assert_eq!(r.rhs, Quantity::Integer(BigUint::from(20u32)));
    }

    #[test]
    fn lift_examples() {
        let x = RationalDist::uniform(scalars(&[1, 2, 3, 4])).unwrap();
        let spec = RuzsaSpec::new(x.clone(), 4).unwrap();
        let parity = FiniteMap::from_fn(x.support(), |v| GroundElement::scalar(v.coords()[0] % 2));
        let y = RuzsaVector(scalars(&[0, 0, 1, 1]));
        let lifted = preimage_lift(&parity, &spec, &y).unwrap();
        assert_eq!(lifted, RuzsaVector(scalars(&[2, 4, 1, 3])));
        assert!(lifted.is_member(&spec));
        assert_eq!(parity.apply_power(&lifted.0).unwrap(), y.0);

        let id = FiniteMap::identity(x.support());
        let y = RuzsaVector(scalars(&[3, 1, 4, 2]));
        assert_eq!(preimage_lift(&id, &spec, &y).unwrap(), y);

        let bad = RuzsaVector(scalars(&[0, 0, 0, 1]));
        assert!(matches!(preimage_lift(&parity, &spec, &bad), Err(Error::Membership(_))));
        let short = RuzsaVector(scalars(&[0, 1]));
        assert!(matches!(preimage_lift(&parity, &spec, &short), Err(Error::Membership(_))));
    }

    #[test]
    fn type_bound_examples() {
        let r = type_bound_check(&RuzsaSpec::new(dist(&[0, 1], &[(1, 2), (1, 2)]), 2).unwrap());
        assert!(r.holds());
        assert_eq!(r.lhs, Quantity::Integer(BigUint::from(2u32)));
        assert_eq!(r.rhs, Quantity::Rational(ratio(4, 1)));
        assert_eq!(r.details["polynomial_factor"], "3");

        let r = type_bound_check(&RuzsaSpec::new(RationalDist::point(0.into()), 7).unwrap());
        assert!(r.holds());
        assert_eq!(r.rhs, Quantity::Rational(ratio(1, 1)));
        assert_eq!(r.details["type_over_size"], "1");
        assert_eq!(r.details["upper_over_type"], "1");

        // 3 <= 27/4 <= 4 * 3
        let r = type_bound_check(&RuzsaSpec::new(dist(&[0, 1], &[(1, 3), (2, 3)]), 3).unwrap());
        assert!(r.holds());
        assert_eq!(r.rhs, Quantity::Rational(ratio(27, 4)));
    }

    #[test]
    fn convergence_examples() {
        let half = dist(&[0, 1], &[(1, 2), (1, 2)]);
        let rows = convergence_profile(&half, &[2, 64], LogBase::Two, 1e-9).unwrap();
        assert!((rows[0].log_size_per_k - 0.5).abs() < 1e-15);
        assert!((rows[0].gap - 0.5).abs() < 1e-15);
        assert!((rows[0].envelope - 3f64.log2() / 2.0).abs() < 1e-15);
        assert!(rows[0].envelope > 0.792 && rows[0].envelope < 0.793);
        assert!(rows[1].gap <= 65f64.log2() / 64.0);
        assert!(rows.iter().all(|r| r.within_envelope));

        let rows = convergence_profile(&RationalDist::point(1.into()), &[1, 5, 9], LogBase::Two, 1e-9).unwrap();
        assert!(rows.iter().all(|r| r.gap == 0.0));
        assert!(convergence_profile(&half, &[3], LogBase::Two, 1e-9).is_err());
    }

    #[test]
    fn suitable_multiples() {
        let x = dist(&[1, 2, 3], &[(1, 6), (1, 3), (1, 2)]);
        assert_eq!(suitable_ks(&x, 20), vec![6, 12, 18]);
        assert!(suitable_ks(&x, 5).is_empty());
    }
}
