//! Point sets in a product space `B_1 x ... x B_n`, their coordinate
//! projections and conditioned slices, and the matching entropy quantities
//! for distributions over n-tuples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::dist::{entropy, pushforward, FiniteMap, LogBase, RationalDist};
use crate::element::GroundElement;
use crate::error::{Error, Result};

/// A set of 1-based coordinate indices, kept sorted and duplicate free.
///
/// The empty set is representable (it is what `s_star` returns for sets
/// containing 1), but operations that project onto an index set reject it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.first() == Some(&0) {
            return Err(Error::Index("indices are 1-based; 0 is not allowed".into()));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Index(format!("repeated index in {indices:?}")));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, ..., n}`
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let set: BTreeSet<usize> = self.0.iter().chain(&other.0).copied().collect();
        IndexSet(set.into_iter().collect())
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|i| other.contains(*i)).collect())
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Checks that every index lies in `[n]`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max > n => Err(Error::Index(format!("index {max} exceeds dimension {n}"))),
            _ => Ok(()),
        }
    }

    fn positions(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// A finite subset of an n-fold product of integer sets.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    dimension: usize,
    points: BTreeSet<GroundElement>,
}

#[derive(Deserialize)]
struct RawPointSet {
    dimension: usize,
    points: Vec<GroundElement>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.dimension, raw.points)
    }
}

impl PointSet {
    /// Rejects repeated points and points of the wrong length.
    pub fn new(dimension: usize, points: Vec<GroundElement>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Schema("point sets need dimension >= 1".into()));
        }
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != dimension {
                return Err(Error::Schema(format!("point {p} does not have dimension {dimension}")));
            }
            if !set.insert(p.clone()) {
                return Err(Error::Schema(format!("repeated point {p}")));
            }
        }
        Ok(PointSet { dimension, points: set })
    }

    /// Collapses duplicates instead of rejecting them.
    pub fn from_iter_dedup<I: IntoIterator<Item = GroundElement>>(dimension: usize, points: I) -> Result<Self> {
        let set: BTreeSet<GroundElement> = points.into_iter().collect();
        PointSet::new(dimension, set.into_iter().collect())
    }

    /// `B_1 x ... x B_n`
    pub fn product(factors: &[Vec<i64>]) -> Result<Self> {
        let mut points: Vec<Vec<i64>> = vec![Vec::new()];
        for factor in factors {
            points = points
                .into_iter()
                .flat_map(|p| {
                    factor.iter().map(move |&b| {
                        let mut q = p.clone();
                        q.push(b);
                        q
                    })
                })
                .collect();
        }
        PointSet::from_iter_dedup(factors.len(), points.into_iter().map(GroundElement::new))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> &BTreeSet<GroundElement> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &GroundElement) -> bool {
        self.points.contains(x)
    }

    /// Uniform distribution on the points.
    pub fn uniform(&self) -> Result<RationalDist> {
        RationalDist::uniform(self.points.iter().cloned().collect())
    }
}

fn require_projectable(s: &IndexSet, n: usize) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Index("cannot project onto the empty index set".into()));
    }
    s.check_within(n)
}

/// Coordinate projection as an explicit map over `domain`.
pub fn projection_map<'a, I>(domain: I, s: &IndexSet) -> FiniteMap
where
    I: IntoIterator<Item = &'a GroundElement>,
{
    let positions = s.positions();
    FiniteMap::from_fn(domain, |x| GroundElement::new(x.select(&positions)))
}

/// `A_S = {x_S : x in A}`.
pub fn project_set(a: &PointSet, s: &IndexSet) -> Result<PointSet> {
    require_projectable(s, a.dimension)?;
    let positions = s.positions();
    PointSet::from_iter_dedup(s.len(), a.points.iter().map(|x| GroundElement::new(x.select(&positions))))
}

/// Distribution of `X_S`.
pub fn project_rv(x: &RationalDist, s: &IndexSet) -> Result<RationalDist> {
    let n = x
        .dimension()
        .ok_or_else(|| Error::Index("support tuples have mixed lengths".into()))?;
    require_projectable(s, n)?;
    pushforward(&projection_map(x.support(), s), x)
}

/// `S_* = {1, ..., min(S) - 1}`, empty when `1` is in `S`.
pub fn s_star(s: &IndexSet) -> IndexSet {
    match s.min() {
        Some(a) => IndexSet((1..a).collect()),
        None => IndexSet::empty(),
    }
}

/// The points of `A` whose `S`-coordinates equal `y`.
pub fn conditional_slice(a: &PointSet, s: &IndexSet, y: &GroundElement) -> Result<PointSet> {
    require_projectable(s, a.dimension)?;
    if y.len() != s.len() {
        return Err(Error::Index(format!("value {y} has {} coordinates, expected {}", y.len(), s.len())));
    }
    let positions = s.positions();
    let points: Vec<GroundElement> = a
        .points
        .iter()
        .filter(|x| x.select(&positions) == y.coords())
        .cloned()
        .collect();
    if points.is_empty() {
        return Err(Error::EmptySlice(format!("{y} is not attained by the projection onto {s:?}")));
    }
    PointSet::new(a.dimension, points)
}

/// One conditioning value `y` of `A_S`: its mass `p(y) = |A | A_S = y| / |A|`
/// and the size of `{x_T : x in A, x_S = y}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceTerm {
    pub mass: BigRational,
    pub size: usize,
}

/// The slices entering `|A_T | A_S|`, ordered by conditioning value.
///
/// The slice for `y` is the set of `T`-projections of the points of `A` whose
/// `S`-coordinates equal `y`. An empty `S` gives the single term `(1, |A_T|)`.
pub fn conditional_terms(a: &PointSet, t: &IndexSet, s: &IndexSet) -> Result<Vec<SliceTerm>> {
    require_projectable(t, a.dimension)?;
    s.check_within(a.dimension)?;
    if a.is_empty() {
        return Err(Error::EmptySlice("the point set is empty".into()));
    }
    let s_pos = s.positions();
    let t_pos = t.positions();
    let mut groups: BTreeMap<Vec<i64>, (usize, BTreeSet<Vec<i64>>)> = BTreeMap::new();
    for x in &a.points {
        let entry = groups.entry(x.select(&s_pos)).or_default();
        entry.0 += 1;
        entry.1.insert(x.select(&t_pos));
    }
    let total = BigInt::from(a.len());
    Ok(groups
        .into_values()
        .map(|(count, slice)| SliceTerm {
            mass: BigRational::new(BigInt::from(count), total.clone()),
            size: slice.len(),
        })
        .collect())
}

/// `log |A_T | A_S|` in the given base.
pub fn conditional_log_avg_size(a: &PointSet, t: &IndexSet, s: &IndexSet, base: LogBase) -> Result<f64> {
    let terms = conditional_terms(a, t, s)?;
    Ok(terms
        .iter()
        .map(|term| crate::rational::rational_to_f64(&term.mass) * base.log(term.size as f64))
        .sum())
}

/// `|A_T | A_S| = prod_y |A_T | A_S = y|^p(y)`.
///
/// Exact when every slice has the same size (in particular for empty `S`).
pub fn conditional_avg_size(a: &PointSet, t: &IndexSet, s: &IndexSet) -> Result<f64> {
    let terms = conditional_terms(a, t, s)?;
    if terms.windows(2).all(|w| w[0].size == w[1].size) {
        return Ok(terms[0].size as f64);
    }
    let ln: f64 = terms
        .iter()
        .map(|term| crate::rational::rational_to_f64(&term.mass) * (term.size as f64).ln())
        .sum();
    Ok(ln.exp())
}

/// `H(X_S)`, zero for the empty index set.
pub fn marginal_entropy(x: &RationalDist, s: &IndexSet, base: LogBase) -> Result<f64> {
    if s.is_empty() {
        return Ok(0.0);
    }
    Ok(entropy(&project_rv(x, s)?, base))
}

/// `H(X_S | X_C) = H(X_{S u C}) - H(X_C)`.
pub fn conditional_entropy(x: &RationalDist, s: &IndexSet, c: &IndexSet, base: LogBase) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::Index("conditional entropy needs a nonempty target set".into()));
    }
    let n = x
        .dimension()
        .ok_or_else(|| Error::Index("support tuples have mixed lengths".into()))?;
    s.check_within(n)?;
    c.check_within(n)?;
    Ok(marginal_entropy(x, &s.union(c), base)? - marginal_entropy(x, c, base)?)
}
