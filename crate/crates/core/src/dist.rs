//! Finite distributions with exact rational probabilities, deterministic maps
//! between ground sets, and the entropy/suitability arithmetic built on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::element::GroundElement;
use crate::error::{Error, Result};
use crate::rational::{format_rational, rational_to_f64, rational_vec};

/// Logarithm base for every entropy and log-cardinality in one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    /// Converts a natural logarithm into this base.
    pub fn from_ln(self, ln_value: f64) -> f64 {
        match self {
            LogBase::Two => ln_value / std::f64::consts::LN_2,
            LogBase::E => ln_value,
        }
    }

    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(Error::Schema(format!("log base must be 2 or e, got {other:?}"))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogBase::Two => write!(f, "2"),
            LogBase::E => write!(f, "e"),
        }
    }
}

/// A finitely supported distribution whose probabilities are exact reduced
/// rationals, all strictly positive and summing to exactly one.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDist")]
pub struct RationalDist {
    support: Vec<GroundElement>,
    #[serde(with = "rational_vec")]
    probs: Vec<BigRational>,
}

#[derive(Deserialize)]
struct RawDist {
    support: Vec<GroundElement>,
    #[serde(with = "rational_vec")]
    probs: Vec<BigRational>,
}

impl TryFrom<RawDist> for RationalDist {
    type Error = Error;

    fn try_from(raw: RawDist) -> Result<Self> {
        RationalDist::new(raw.support, raw.probs)
    }
}

impl RationalDist {
    /// Builds a distribution. Zero-mass outcomes are dropped; negative masses,
    /// repeated support elements, and totals other than one are rejected.
    pub fn new(support: Vec<GroundElement>, probs: Vec<BigRational>) -> Result<Self> {
        if support.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} support elements but {} probabilities",
                support.len(),
                probs.len()
            )));
        }
        let mut seen = HashMap::with_capacity(support.len());
        let mut kept_support = Vec::with_capacity(support.len());
        let mut kept_probs = Vec::with_capacity(probs.len());
        let mut total = BigRational::zero();
        for (x, p) in support.into_iter().zip(probs) {
            if p.is_negative() {
                return Err(Error::InvalidDistribution(format!(
                    "negative probability {} at {x}",
                    format_rational(&p)
                )));
            }
            if seen.insert(x.clone(), ()).is_some() {
                return Err(Error::InvalidDistribution(format!("repeated support element {x}")));
            }
            if p.is_zero() {
                continue;
            }
            total += &p;
            kept_support.push(x);
            kept_probs.push(p);
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(RationalDist { support: kept_support, probs: kept_probs })
    }

    /// Uniform distribution over distinct elements.
    pub fn uniform(support: Vec<GroundElement>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        let p = BigRational::new(BigInt::one(), BigInt::from(support.len()));
        let probs = vec![p; support.len()];
        RationalDist::new(support, probs)
    }

    pub fn point(x: GroundElement) -> Self {
        RationalDist { support: vec![x], probs: vec![BigRational::one()] }
    }

    pub fn support(&self) -> &[GroundElement] {
        &self.support
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroundElement, &BigRational)> {
        self.support.iter().zip(&self.probs)
    }

    pub fn prob_of(&self, x: &GroundElement) -> BigRational {
        self.iter()
            .find(|(y, _)| *y == x)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Common dimension of the support tuples, if they all agree.
    pub fn dimension(&self) -> Option<usize> {
        let first = self.support.first()?.len();
        self.support.iter().all(|x| x.len() == first).then_some(first)
    }

    /// Same outcomes with the same masses, regardless of support order.
    pub fn same_law(&self, other: &RationalDist) -> bool {
        let mine: BTreeMap<_, _> = self.iter().collect();
        let theirs: BTreeMap<_, _> = other.iter().collect();
        mine == theirs
    }
}

impl fmt::Debug for RationalDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (x, p) in self.iter() {
            m.entry(x, &format_rational(p));
        }
        m.finish()
    }
}

/// A function between ground sets given by an explicit table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct FiniteMap {
    table: BTreeMap<GroundElement, GroundElement>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    table: Vec<(GroundElement, GroundElement)>,
}

impl TryFrom<RawMap> for FiniteMap {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        FiniteMap::from_pairs(raw.table)
    }
}

impl From<FiniteMap> for RawMap {
    fn from(map: FiniteMap) -> Self {
        RawMap { table: map.table.into_iter().collect() }
    }
}

impl FiniteMap {
    /// Builds a map from key/value pairs; a key listed twice is an error even
    /// when both images agree.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroundElement, GroundElement)>,
    {
        let mut table = BTreeMap::new();
        for (k, v) in pairs {
            if table.contains_key(&k) {
                return Err(Error::Schema(format!("map lists key {k} more than once")));
            }
            table.insert(k, v);
        }
        Ok(FiniteMap { table })
    }

    pub fn from_fn<'a, I, F>(domain: I, f: F) -> Self
    where
        I: IntoIterator<Item = &'a GroundElement>,
        F: Fn(&GroundElement) -> GroundElement,
    {
        let table = domain.into_iter().map(|x| (x.clone(), f(x))).collect();
        FiniteMap { table }
    }

    pub fn identity<'a, I>(domain: I) -> Self
    where
        I: IntoIterator<Item = &'a GroundElement>,
    {
        FiniteMap::from_fn(domain, Clone::clone)
    }

    pub fn domain(&self) -> impl Iterator<Item = &GroundElement> {
        self.table.keys()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn contains(&self, x: &GroundElement) -> bool {
        self.table.contains_key(x)
    }

    pub fn apply(&self, x: &GroundElement) -> Result<&GroundElement> {
        self.table
            .get(x)
            .ok_or_else(|| Error::Domain(format!("{x} is outside the domain of the map")))
    }

    /// The coordinate-wise map induced on k-tuples.
    pub fn apply_power(&self, xs: &[GroundElement]) -> Result<Vec<GroundElement>> {
        xs.iter().map(|x| self.apply(x).cloned()).collect()
    }

    /// The elements of the domain mapped to `y`, in canonical order.
    pub fn fiber<'a>(&'a self, y: &'a GroundElement) -> impl Iterator<Item = &'a GroundElement> + 'a {
        self.table.iter().filter(move |(_, v)| *v == y).map(|(k, _)| k)
    }
}

/// Shannon entropy of `dist` in the given base.
pub fn entropy(dist: &RationalDist, base: LogBase) -> f64 {
    let nats: f64 = dist
        .probs()
        .iter()
        .map(|p| {
            let pf = rational_to_f64(p);
            if p.is_one() {
                0.0
            } else {
                -pf * pf.ln()
            }
        })
        .sum();
    base.from_ln(nats)
}

/// Distribution of `f(X)`: each image point carries the exact sum of the
/// masses of its preimages. Image points are listed in order of first
/// appearance along the support of `dist`.
pub fn pushforward(f: &FiniteMap, dist: &RationalDist) -> Result<RationalDist> {
    let mut order: Vec<GroundElement> = Vec::new();
    let mut mass: HashMap<GroundElement, BigRational> = HashMap::new();
    for (x, p) in dist.iter() {
        let y = f.apply(x)?;
        match mass.get_mut(y) {
            Some(m) => *m += p,
            None => {
                order.push(y.clone());
                mass.insert(y.clone(), p.clone());
            }
        }
    }
    let probs = order.iter().map(|y| mass[y].clone()).collect();
    Ok(RationalDist { support: order, probs })
}

/// Least common multiple of the reduced denominators: the smallest positive
/// k for which every `k * p_i` is an integer.
pub fn minimal_suitable_k(dist: &RationalDist) -> BigUint {
    dist.probs()
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()))
        .to_biguint()
        .expect("denominators are positive")
}

pub fn is_suitable(dist: &RationalDist, k: u64) -> bool {
    k > 0 && (BigUint::from(k) % minimal_suitable_k(dist)).is_zero()
}

/// Nearest distribution (in total variation) whose masses are multiples of
/// `1/d` for a single `d <= max_denominator`.
///
/// For each `d` the largest-remainder rounding of `d * w` is taken, which is
/// the L1-closest integer vector with sum `d`; remainder ties round up the
/// earlier entry. Among all `d` the smallest distance wins, ties going to the
/// smaller `d`. Entries rounded to zero are dropped.
pub fn rationalize(
    support: Vec<GroundElement>,
    weights: &[f64],
    max_denominator: u64,
) -> Result<RationalDist> {
    if support.len() != weights.len() {
        return Err(Error::Approximation(format!(
            "{} support elements but {} weights",
            support.len(),
            weights.len()
        )));
    }
    if max_denominator == 0 {
        return Err(Error::Approximation("max_denominator must be positive".into()));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Approximation("weights must be finite and nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::Approximation("weights sum to zero".into()));
    }
    let target: Vec<f64> = weights.iter().map(|w| w / total).collect();

    let mut best: Option<(f64, u64, Vec<u64>)> = None;
    for d in 1..=max_denominator {
        let counts = largest_remainder(&target, d);
        let tv = 0.5
            * counts
                .iter()
                .zip(&target)
                .map(|(&c, &t)| (c as f64 / d as f64 - t).abs())
                .sum::<f64>();
        if best.as_ref().is_none_or(|(best_tv, _, _)| tv < *best_tv) {
            best = Some((tv, d, counts));
        }
    }
    let (_, d, counts) = best.expect("at least one denominator tried");
    if counts.iter().all(|&c| c == 0) {
        return Err(Error::Approximation("all weights round to zero".into()));
    }
    let probs = counts
        .iter()
        .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(d)))
        .collect();
    RationalDist::new(support, probs)
}

fn largest_remainder(target: &[f64], d: u64) -> Vec<u64> {
    let scaled: Vec<f64> = target.iter().map(|t| t * d as f64).collect();
    let mut counts: Vec<u64> = scaled.iter().map(|s| s.floor().max(0.0) as u64).collect();
    let assigned: u64 = counts.iter().sum();
    let mut remaining = d.saturating_sub(assigned);
    let mut order: Vec<usize> = (0..target.len()).collect();
    // stable sort keeps earlier entries first among equal remainders
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.partial_cmp(&ra).expect("finite remainders")
    });
    for &i in order.iter().cycle() {
        if remaining == 0 {
            break;
        }
        counts[i] += 1;
        remaining -= 1;
    }
    counts
}

/// The counts `k * p_i` as machine integers, or `None` when some product is
/// not an integer.
pub(crate) fn type_counts(dist: &RationalDist, k: u64) -> Option<Vec<u64>> {
    let kk = BigRational::from_integer(BigInt::from(k));
    dist.probs()
        .iter()
        .map(|p| {
            let c = p * &kk;
            if c.is_integer() {
                c.to_integer().to_u64()
            } else {
                None
            }
        })
        .collect()
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

    #[test]
    fn construction_invariants() {
        let d = dist(&[1, 2, 3], &[(0, 1), (1, 2), (1, 2)]);
        assert_eq!(d.len(), 2, "zero-mass outcome dropped");
        assert!(RationalDist::new(scalars(&[1, 2]), vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(RationalDist::new(scalars(&[1, 1]), vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(RationalDist::new(scalars(&[1, 2]), vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(RationalDist::new(scalars(&[1]), vec![]).is_err());
        let reduced = dist(&[1, 2], &[(2, 4), (3, 6)]);
        assert_eq!(reduced.probs()[0].denom(), &BigInt::from(2));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&dist(&[0, 1], &[(1, 2), (1, 2)]), LogBase::Two), 1.0);
        assert_eq!(entropy(&RationalDist::point(GroundElement::scalar(7)), LogBase::Two), 0.0);
        let h = entropy(&dist(&[0, 1], &[(1, 3), (2, 3)]), LogBase::Two);
        assert!((h - (3f64.log2() - 2.0 / 3.0)).abs() < 1e-12);
        assert!((h - 0.918296).abs() < 1e-6);
        let nats = entropy(&dist(&[0, 1], &[(1, 2), (1, 2)]), LogBase::E);
        assert!((nats - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn pushforward_examples() {
        let x = dist(&[1, 2, 3], &[(1, 6), (1, 3), (1, 2)]);
        let id = FiniteMap::identity(x.support());
        assert_eq!(pushforward(&id, &x).unwrap(), x);

        let u = RationalDist::uniform(scalars(&[1, 2, 3, 4])).unwrap();
        let parity = FiniteMap::from_fn(u.support(), |x| GroundElement::scalar(x.coords()[0] % 2));
        let y = pushforward(&parity, &u).unwrap();
        assert!(y.same_law(&dist(&[0, 1], &[(1, 2), (1, 2)])));

        // a,b -> u ; c -> v with a=1,b=2,c=3,u=10,v=20
        let f = FiniteMap::from_pairs([
            (1.into(), 10.into()),
            (2.into(), 10.into()),
            (3.into(), 20.into()),
        ])
        .unwrap();
        let y = pushforward(&f, &x).unwrap();
        assert_eq!(y, dist(&[10, 20], &[(1, 2), (1, 2)]));
    }

    #[test]
    fn pushforward_outside_domain() {
        let x = dist(&[1, 2], &[(1, 2), (1, 2)]);
        let f = FiniteMap::from_pairs([(1.into(), 1.into())]).unwrap();
        assert!(matches!(pushforward(&f, &x), Err(Error::Domain(_))));
    }

    #[test]
    fn suitable_k_examples() {
        assert_eq!(minimal_suitable_k(&dist(&[0, 1], &[(1, 2), (1, 2)])), BigUint::from(2u32));
        assert_eq!(minimal_suitable_k(&dist(&[0, 1], &[(1, 3), (2, 3)])), BigUint::from(3u32));
        let x = dist(&[1, 2, 3], &[(1, 6), (1, 3), (1, 2)]);
        assert_eq!(minimal_suitable_k(&x), BigUint::from(6u32));
        assert!(is_suitable(&x, 12));
        assert!(!is_suitable(&x, 4));
        assert!(!is_suitable(&x, 0));
    }

    #[test]
    fn rationalize_examples() {
        let s = scalars(&[0, 1]);
        assert_eq!(rationalize(s.clone(), &[0.5, 0.5], 2).unwrap(), dist(&[0, 1], &[(1, 2), (1, 2)]));
        assert_eq!(
            rationalize(s.clone(), &[1.0 / 3.0, 2.0 / 3.0], 3).unwrap(),
            dist(&[0, 1], &[(1, 3), (2, 3)])
        );
        assert_eq!(
            rationalize(s.clone(), &[0.4999, 0.5001], 2).unwrap(),
            dist(&[0, 1], &[(1, 2), (1, 2)])
        );
        assert!(rationalize(s.clone(), &[0.0, 0.0], 4).is_err());
        assert!(rationalize(s.clone(), &[-1.0, 2.0], 4).is_err());
        assert!(rationalize(s, &[f64::NAN, 1.0], 4).is_err());
    }

    #[test]
    fn rationalize_ties_go_to_earlier_element() {
        // d = 1 is forced; both remainders equal, so the first entry gets the unit
        let r = rationalize(scalars(&[5, 6]), &[1.0, 1.0], 1).unwrap();
        assert_eq!(r.support(), &scalars(&[5])[..]);
    }

    #[test]
    fn map_rejects_duplicate_keys() {
        assert!(FiniteMap::from_pairs([(1.into(), 1.into()), (1.into(), 1.into())]).is_err());
    }

    #[test]
    fn json_shapes() {
        let x: RationalDist =
            serde_json::from_str(r#"{"support": [[1],[2],[3]], "probs": ["1/6","1/3","1/2"]}"#).unwrap();
        assert_eq!(x, dist(&[1, 2, 3], &[(1, 6), (1, 3), (1, 2)]));
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"support":[[1],[2],[3]],"probs":["1/6","1/3","1/2"]}"#
        );
        assert!(serde_json::from_str::<RationalDist>(r#"{"support": [[1]], "probs": ["0.5"]}"#).is_err());
        let m: FiniteMap = serde_json::from_str(r#"{"table": [[[1],[0]], [[2],[1]]]}"#).unwrap();
        assert_eq!(m.apply(&2.into()).unwrap(), &GroundElement::scalar(1));
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"table":[[[1],[0]],[[2],[1]]]}"#);
    }
}
