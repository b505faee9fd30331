//! Covers of `[n]` by multisets of index sets: fractional-cover and uniform
//! k-cover checks, and the minimum-weight fractional cover LP.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::projections::IndexSet;
use crate::rational::{format_rational, rational_vec};
use crate::report::{CheckReport, Quantity, Verdict};

/// A multiset of nonempty subsets of `[n]`, optionally weighted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCover")]
pub struct CoverSpec {
    n: usize,
    members: Vec<IndexSet>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational_vec")]
    weights: Option<Vec<BigRational>>,
}

#[derive(Deserialize)]
struct RawCover {
    n: usize,
    members: Vec<IndexSet>,
    #[serde(default, with = "opt_rational_vec")]
    weights: Option<Vec<BigRational>>,
}

impl TryFrom<RawCover> for CoverSpec {
    type Error = Error;

    fn try_from(raw: RawCover) -> Result<Self> {
        CoverSpec::new(raw.n, raw.members, raw.weights)
    }
}

mod opt_rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => rational_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<BigRational>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "rational_vec")] Vec<BigRational>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

impl CoverSpec {
    pub fn new(n: usize, members: Vec<IndexSet>, weights: Option<Vec<BigRational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Schema("covers need n >= 1".into()));
        }
        for m in &members {
            if m.is_empty() {
                return Err(Error::Schema("cover members must be nonempty".into()));
            }
            m.check_within(n)?;
        }
        if let Some(w) = &weights {
            if w.len() != members.len() {
                return Err(Error::Schema(format!("{} weights for {} members", w.len(), members.len())));
            }
            if let Some(bad) = w.iter().find(|x| x.is_negative()) {
                return Err(Error::Schema(format!("negative weight {}", format_rational(bad))));
            }
        }
        Ok(CoverSpec { n, members, weights })
    }

    pub fn unweighted(n: usize, members: Vec<IndexSet>) -> Result<Self> {
        CoverSpec::new(n, members, None)
    }

    /// Every subset of `[n]` of the given size, in lexicographic order.
    pub fn all_subsets_of_size(n: usize, size: usize) -> Result<Self> {
        let members = combinations(n, size)
            .into_iter()
            .map(IndexSet::new)
            .collect::<Result<Vec<_>>>()?;
        CoverSpec::unweighted(n, members)
    }

    /// The chain `{1}, {2}, ..., {n}` with unit weights.
    pub fn chain(n: usize) -> Result<Self> {
        let members = (1..=n).map(|i| IndexSet::new(vec![i])).collect::<Result<Vec<_>>>()?;
        let weights = vec![BigRational::one(); n];
        CoverSpec::new(n, members, Some(weights))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[IndexSet] {
        &self.members
    }

    pub fn weights(&self) -> Option<&[BigRational]> {
        self.weights.as_deref()
    }

    pub fn with_weights(&self, weights: Vec<BigRational>) -> Result<Self> {
        CoverSpec::new(self.n, self.members.clone(), Some(weights))
    }

    /// Members paired with their weights, skipping zero-weight members.
    pub fn weighted_members(&self) -> Result<Vec<(&IndexSet, &BigRational)>> {
        let w = self.weights.as_ref().ok_or_else(|| Error::Schema("cover has no weights".into()))?;
        Ok(self.members.iter().zip(w).filter(|(_, w)| !w.is_zero()).collect())
    }

    /// How many members contain each element of `[n]`.
    pub fn multiplicities(&self) -> Vec<usize> {
        (1..=self.n)
            .map(|i| self.members.iter().filter(|m| m.contains(i)).count())
            .collect()
    }

    /// Total weight on each element of `[n]`.
    pub fn coverage(&self) -> Result<Vec<BigRational>> {
        let w = self.weights.as_ref().ok_or_else(|| Error::Schema("cover has no weights".into()))?;
        Ok(coverage_of(self.n, &self.members, w))
    }
}

fn coverage_of(n: usize, members: &[IndexSet], weights: &[BigRational]) -> Vec<BigRational> {
    let mut sums = vec![BigRational::zero(); n];
    for (m, w) in members.iter().zip(weights) {
        for &i in m.indices() {
            sums[i - 1] += w;
        }
    }
    sums
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// Checks `sum_{S containing i} w(S) >= 1` for every `i`, exactly.
pub fn is_fractional_cover(cover: &CoverSpec) -> Result<CheckReport> {
    let sums = cover.coverage()?;
    let one = BigRational::one();
    let min = sums.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let mut report = CheckReport::new(
        "fractional_cover",
        Verdict::from_bool(sums.iter().all(|s| *s >= one)),
        Quantity::Rational(one.clone()),
        Quantity::Rational(min),
    )
    .detail("coverage", sums.iter().map(format_rational).collect::<Vec<_>>());
    for (i, s) in sums.iter().enumerate() {
        if *s < one {
            report = report.witness(json!({"element": i + 1, "coverage": format_rational(s)}));
        }
    }
    Ok(report)
}

/// Reports whether every element lies in exactly `k` members (uniform) and
/// whether every element lies in at least `k` (plain k-cover). The verdict
/// tracks uniformity.
pub fn is_uniform_k_cover(cover: &CoverSpec, k: usize) -> CheckReport {
    let counts = cover.multiplicities();
    let uniform = counts.iter().all(|&c| c == k);
    let k_cover = counts.iter().all(|&c| c >= k);
    let min = counts.iter().copied().min().unwrap_or(0);
    CheckReport::new(
        "uniform_k_cover",
        Verdict::from_bool(uniform),
        Quantity::Integer(k.into()),
        Quantity::Integer(min.into()),
    )
    .detail("k", k)
    .detail("multiplicities", counts)
    .detail("uniform", uniform)
    .detail("k_cover", k_cover)
}

/// Optimal weights of the minimum fractional cover LP.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    #[serde(with = "rational_vec")]
    pub weights: Vec<BigRational>,
    #[serde(with = "crate::rational::rational_string")]
    pub objective: BigRational,
    /// Coverage sum of each element under `weights`.
    #[serde(with = "rational_vec")]
    pub certificate: Vec<BigRational>,
}

/// Minimizes `sum w(S)` subject to every element of `[n]` being covered with
/// total weight at least one.
///
/// Solved exactly through the packing dual `max sum y_i` subject to
/// `sum_{i in S} y_i <= 1` for every member, whose all-slack basis is
/// feasible. Bland's rule picks entering and leaving variables, and the cover
/// weights are the final dual prices of the packing constraints.
pub fn min_fractional_cover(n: usize, members: &[IndexSet]) -> Result<LpSolution> {
    let cover = CoverSpec::unweighted(n, members.to_vec())?;
    if let Some(i) = cover.multiplicities().iter().position(|&c| c == 0) {
        return Err(Error::Infeasible(format!("element {} lies in no member", i + 1)));
    }
    let m = members.len();
    let mut rows: Vec<Vec<BigRational>> = members
        .iter()
        .map(|s| {
            let mut row = vec![BigRational::zero(); n + m];
            for &i in s.indices() {
                row[i - 1] = BigRational::one();
            }
            row
        })
        .collect();
    for (j, row) in rows.iter_mut().enumerate() {
        row[n + j] = BigRational::one();
    }
    let mut rhs = vec![BigRational::one(); m];
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut reduced: Vec<BigRational> = (0..n + m)
        .map(|j| if j < n { BigRational::one() } else { BigRational::zero() })
        .collect();
    let mut value = BigRational::zero();

    // Bland: lowest-index improving column
    while let Some(entering) = reduced.iter().position(|r| r.is_positive()) {
        let mut leaving: Option<(usize, BigRational)> = None;
        for r in 0..m {
            let a = &rows[r][entering];
            if !a.is_positive() {
                continue;
            }
            let ratio = &rhs[r] / a;
            let better = match &leaving {
                None => true,
                Some((best, best_ratio)) => {
                    ratio < *best_ratio || (ratio == *best_ratio && basis[r] < basis[*best])
                }
            };
            if better {
                leaving = Some((r, ratio));
            }
        }
        let Some((pivot_row, _)) = leaving else {
            return Err(Error::Infeasible("packing dual is unbounded".into()));
        };

        let pivot = rows[pivot_row][entering].clone();
        for v in rows[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        rhs[pivot_row] /= &pivot;
        let pivot_vals = rows[pivot_row].clone();
        let pivot_rhs = rhs[pivot_row].clone();
        for r in 0..m {
            if r == pivot_row || rows[r][entering].is_zero() {
                continue;
            }
            let factor = rows[r][entering].clone();
            for (v, p) in rows[r].iter_mut().zip(&pivot_vals) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            rhs[r] -= &factor * &pivot_rhs;
        }
        let factor = reduced[entering].clone();
        for (v, p) in reduced.iter_mut().zip(&pivot_vals) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
        value += &factor * &pivot_rhs;
        basis[pivot_row] = entering;
    }

    let weights: Vec<BigRational> = (0..m).map(|j| -reduced[n + j].clone()).collect();
    let objective = weights.iter().fold(BigRational::zero(), |acc, w| acc + w);
    debug_assert_eq!(objective, value);
    let certificate = coverage_of(n, members, &weights);
    Ok(LpSolution { weights, objective, certificate })
}

/// Uniform weights `1/k` on every member.
pub fn scaled_uniform(cover: &CoverSpec, k: usize) -> Result<CoverSpec> {
    let w = BigRational::new(BigInt::one(), BigInt::from(k));
    cover.with_weights(vec![w; cover.members().len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn idx(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    fn triangle() -> Vec<IndexSet> {
        vec![idx(&[1, 2]), idx(&[1, 3]), idx(&[2, 3])]
    }

    #[test]
    fn validation() {
        assert!(CoverSpec::new(2, vec![idx(&[3])], None).is_err());
        assert!(CoverSpec::new(2, vec![IndexSet::empty()], None).is_err());
        assert!(CoverSpec::new(2, vec![idx(&[1])], Some(vec![])).is_err());
        assert!(CoverSpec::new(2, vec![idx(&[1])], Some(vec![ratio(-1, 2)])).is_err());
    }

    #[test]
    fn fractional_cover_examples() {
        let c = CoverSpec::new(3, triangle(), Some(vec![ratio(1, 2); 3])).unwrap();
        let r = is_fractional_cover(&c).unwrap();
        assert!(r.holds());
        assert_eq!(r.details["coverage"], json!(["1", "1", "1"]));

        let c = CoverSpec::new(2, vec![idx(&[1])], Some(vec![ratio(1, 1)])).unwrap();
        let r = is_fractional_cover(&c).unwrap();
        assert!(!r.holds());
        assert_eq!(r.witnesses, vec![json!({"element": 2, "coverage": "0"})]);

        let c = CoverSpec::new(3, vec![idx(&[1, 2]), idx(&[3]), idx(&[2, 3])], Some(vec![ratio(1, 1); 3])).unwrap();
        assert!(is_fractional_cover(&c).unwrap().holds());

        let unweighted = CoverSpec::unweighted(3, triangle()).unwrap();
        assert!(matches!(is_fractional_cover(&unweighted), Err(Error::Schema(_))));
    }

    #[test]
    fn uniform_cover_examples() {
        let r = is_uniform_k_cover(&CoverSpec::unweighted(3, triangle()).unwrap(), 2);
        assert!(r.holds());
        let r = is_uniform_k_cover(&CoverSpec::unweighted(2, vec![idx(&[1]), idx(&[1, 2])]).unwrap(), 1);
        assert!(!r.holds());
        assert_eq!(r.details["k_cover"], true);
        assert_eq!(r.details["multiplicities"], json!([2, 1]));
        let partition = CoverSpec::unweighted(4, vec![idx(&[1]), idx(&[2]), idx(&[3]), idx(&[4])]).unwrap();
        assert!(is_uniform_k_cover(&partition, 1).holds());
    }

    /// Brute-force vertex enumeration for the triangle LP: every basic
    /// solution sets three of the six constraints (three coverage, three
    /// nonnegativity) to equality.
    #[test]
    fn triangle_matches_vertex_enumeration() {
        // rows: coverage of 1, 2, 3 then w1 >= 0, w2 >= 0, w3 >= 0
        let a: [[i64; 3]; 6] = [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let b: [i64; 6] = [1, 1, 1, 0, 0, 0];
        let mut best: Option<BigRational> = None;
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let m = [a[i], a[j], a[k]];
                    let rhs = [b[i], b[j], b[k]];
                    if let Some(w) = solve3(m, rhs) {
                        let feasible = (0..6).all(|r| {
                            let lhs: BigRational = (0..3).map(|c| ratio(a[r][c], 1) * &w[c]).sum();
                            lhs >= ratio(b[r], 1)
                        });
                        if feasible {
                            let obj: BigRational = w.iter().cloned().sum();
                            if best.as_ref().is_none_or(|bst| obj < *bst) {
                                best = Some(obj);
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(best, Some(ratio(3, 2)));
        let sol = min_fractional_cover(3, &triangle()).unwrap();
        assert_eq!(sol.objective, ratio(3, 2));
        assert_eq!(sol.weights, vec![ratio(1, 2); 3]);
    }

    fn solve3(m: [[i64; 3]; 3], rhs: [i64; 3]) -> Option<Vec<BigRational>> {
        let det = |m: [[i64; 3]; 3]| -> i64 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det(m);
        if d == 0 {
            return None;
        }
        Some(
            (0..3)
                .map(|c| {
                    let mut mc = m;
                    for r in 0..3 {
                        mc[r][c] = rhs[r];
                    }
                    ratio(det(mc), d)
                })
                .collect(),
        )
    }

    #[test]
    fn lp_partition_and_single_set() {
        let parts = vec![idx(&[1, 2]), idx(&[3]), idx(&[4, 5])];
        let sol = min_fractional_cover(5, &parts).unwrap();
        assert_eq!(sol.objective, ratio(3, 1));
        assert_eq!(sol.weights, vec![ratio(1, 1); 3]);

        let sol = min_fractional_cover(2, &[idx(&[1, 2])]).unwrap();
        assert_eq!(sol.objective, ratio(1, 1));
    }

    #[test]
    fn lp_infeasible() {
        assert!(matches!(min_fractional_cover(3, &[idx(&[1, 2])]), Err(Error::Infeasible(_))));
    }

    #[test]
    fn lp_with_duplicates_and_supersets() {
        let members = vec![idx(&[1]), idx(&[1]), idx(&[1, 2, 3]), idx(&[2])];
        let sol = min_fractional_cover(3, &members).unwrap();
        assert_eq!(sol.objective, ratio(1, 1));
        assert!(sol.certificate.iter().all(|c| *c >= ratio(1, 1)));
    }

    #[test]
    fn scaled_uniform_cover_is_tight() {
        let c = CoverSpec::all_subsets_of_size(4, 3).unwrap();
        let scaled = scaled_uniform(&c, 3).unwrap();
        let cov = scaled.coverage().unwrap();
        assert!(cov.iter().all(|x| *x == ratio(1, 1)));
    }

    #[test]
    fn json_shapes() {
        let c: CoverSpec =
            serde_json::from_str(r#"{"n": 3, "members": [[1,2],[1,3],[2,3]], "weights": ["1/2","1/2","1/2"]}"#).unwrap();
        assert_eq!(c.weights().unwrap().len(), 3);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"n":3,"members":[[1,2],[1,3],[2,3]],"weights":["1/2","1/2","1/2"]}"#
        );
        let c: CoverSpec = serde_json::from_str(r#"{"n": 3, "members": [[1,2],[1,3],[2,3]]}"#).unwrap();
        assert!(c.weights().is_none());
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"n":3,"members":[[1,2],[1,3],[2,3]]}"#);
    }
}
