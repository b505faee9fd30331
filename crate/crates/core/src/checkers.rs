//! Evaluation of cardinality and entropy inequalities.
//!
//! An [`InequalitySpec`] is a map `f`, maps `f_1..f_n` and coefficients
//! `a_1..a_n`. On a finite set `A` it reads `|f(A)| <= prod |f_i(A)|^a_i`; on a
//! distribution `X` it reads `H(f(X)) <= sum a_i H(f_i(X))`. Set-side
//! comparisons run in log space and fall back to exact big-integer powers when
//! the float slack is inside the tolerance band.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::covers::{is_fractional_cover, is_uniform_k_cover, CoverSpec};
use crate::dist::{entropy, minimal_suitable_k, pushforward, type_counts, FiniteMap, LogBase, RationalDist};
use crate::element::GroundElement;
use crate::error::{Error, Result};
use crate::projections::{
    conditional_entropy, conditional_terms, marginal_entropy, project_set, projection_map, s_star, IndexSet,
    PointSet,
};
use crate::rational::{format_rational, ln_biguint, rational_to_f64, rational_vec};
use crate::report::{CheckReport, Quantity, Verdict};
use crate::ruzsa::{multinomial, ruzsa_enumerate, ruzsa_size, suitable_ks, RuzsaSpec};

/// Evaluation parameters shared by every check in one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub tolerance: f64,
    pub base: LogBase,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { tolerance: 1e-9, base: LogBase::Two }
    }
}

/// Largest total bit length an exact power comparison may build.
const EXACT_BUDGET_BITS: u64 = 1 << 22;

/// `|f(A)| <= prod |f_i(A)|^a_i` on sets, `H(f(X)) <= sum a_i H(f_i(X))` on
/// distributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySpec {
    lhs_map: FiniteMap,
    rhs_maps: Vec<FiniteMap>,
    coefficients: Vec<BigRational>,
}

impl InequalitySpec {
    pub fn new(lhs_map: FiniteMap, rhs_maps: Vec<FiniteMap>, coefficients: Vec<BigRational>) -> Result<Self> {
        if rhs_maps.len() != coefficients.len() {
            return Err(Error::Schema(format!(
                "{} right-hand maps but {} coefficients",
                rhs_maps.len(),
                coefficients.len()
            )));
        }
        let domain: Vec<&GroundElement> = lhs_map.domain().collect();
        for m in &rhs_maps {
            if m.len() != domain.len() || !m.domain().eq(domain.iter().copied()) {
                return Err(Error::Schema("all maps must share one domain".into()));
            }
        }
        Ok(InequalitySpec { lhs_map, rhs_maps, coefficients })
    }

    /// Identity on the left and coordinate projections on the right.
    pub fn projections<'a, I>(domain: I, members: &[IndexSet], coefficients: Vec<BigRational>) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroundElement>,
    {
        let domain: Vec<&GroundElement> = domain.into_iter().collect();
        let lhs = FiniteMap::identity(domain.iter().copied());
        let rhs = members.iter().map(|s| projection_map(domain.iter().copied(), s)).collect();
        InequalitySpec::new(lhs, rhs, coefficients)
    }

    pub fn lhs_map(&self) -> &FiniteMap {
        &self.lhs_map
    }

    pub fn rhs_maps(&self) -> &[FiniteMap] {
        &self.rhs_maps
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    fn require_nonnegative(&self) -> Result<()> {
        match self.coefficients.iter().find(|c| c.is_negative()) {
            Some(c) => Err(Error::NegativeCoefficient(format_rational(c))),
            None => Ok(()),
        }
    }

    fn maps(&self) -> impl Iterator<Item = &FiniteMap> {
        std::iter::once(&self.lhs_map).chain(&self.rhs_maps)
    }
}

/// Map description as it appears in JSON inputs: an explicit table, a
/// coordinate projection, or the identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSource {
    Table(FiniteMap),
    Project { project: IndexSet },
    Identity { identity: bool },
}

/// JSON form of an [`InequalitySpec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalitySource {
    pub lhs: MapSource,
    pub rhs: Vec<MapSource>,
    #[serde(with = "rational_vec")]
    pub coefficients: Vec<BigRational>,
}

impl InequalitySource {
    /// Builds the spec. Projections and the identity are tabulated over the
    /// domain of the first explicit table, or over `domain` when there is none.
    pub fn resolve(&self, domain: &[GroundElement]) -> Result<InequalitySpec> {
        let table_domain: Option<Vec<GroundElement>> =
            std::iter::once(&self.lhs).chain(&self.rhs).find_map(|m| match m {
                MapSource::Table(t) => Some(t.domain().cloned().collect()),
                _ => None,
            });
        let domain = table_domain.as_deref().unwrap_or(domain);
        let build = |m: &MapSource| -> Result<FiniteMap> {
            match m {
                MapSource::Table(t) => Ok(t.clone()),
                MapSource::Project { project } => {
                    if project.is_empty() {
                        return Err(Error::Index("cannot project onto the empty index set".into()));
                    }
                    for x in domain {
                        project.check_within(x.len())?;
                    }
                    Ok(projection_map(domain, project))
                }
                MapSource::Identity { identity: true } => Ok(FiniteMap::identity(domain)),
                MapSource::Identity { identity: false } => {
                    Err(Error::Schema("\"identity\": false does not describe a map".into()))
                }
            }
        };
        let lhs = build(&self.lhs)?;
        let rhs = self.rhs.iter().map(build).collect::<Result<Vec<_>>>()?;
        InequalitySpec::new(lhs, rhs, self.coefficients.clone())
    }
}

/// Compares `prod b^e` on both sides exactly, for nonnegative rational
/// exponents. Returns `None` if the integers involved would exceed the budget.
pub fn exact_power_compare(
    lhs: &[(BigUint, BigRational)],
    rhs: &[(BigUint, BigRational)],
    budget_bits: u64,
) -> Option<Ordering> {
    if lhs.iter().chain(rhs).any(|(_, e)| e.is_negative()) {
        return None;
    }
    let denom = lhs
        .iter()
        .chain(rhs)
        .fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
    let scale = BigRational::from_integer(denom);
    let mut cost: u64 = 0;
    let mut scaled = |terms: &[(BigUint, BigRational)]| -> Option<Vec<(BigUint, u32)>> {
        terms
            .iter()
            .map(|(b, e)| {
                let power = (e * &scale).to_integer().to_u32()?;
                cost = cost.saturating_add(b.bits().saturating_mul(power as u64));
                Some((b.clone(), power))
            })
            .collect()
    };
    let lhs = scaled(lhs)?;
    let rhs = scaled(rhs)?;
    if cost > budget_bits {
        return None;
    }
    let product = |terms: Vec<(BigUint, u32)>| terms.into_iter().fold(BigUint::one(), |acc, (b, p)| acc * b.pow(p));
    Some(product(lhs).cmp(&product(rhs)))
}

/// Verdict for `lhs <= rhs` from a log-space slack, consulting the exact
/// comparison only inside the tolerance band.
fn banded_verdict<F>(slack: f64, tolerance: f64, exact: F) -> (Verdict, bool)
where
    F: FnOnce() -> Option<Ordering>,
{
    if slack >= tolerance {
        (Verdict::Holds, false)
    } else if slack <= -tolerance {
        (Verdict::Violated, false)
    } else {
        match exact() {
            Some(Ordering::Greater) => (Verdict::Violated, true),
            Some(_) => (Verdict::Holds, true),
            None => (Verdict::Inconclusive, false),
        }
    }
}

fn image_size<'a, I>(map: &FiniteMap, points: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a GroundElement>,
{
    let mut image = BTreeSet::new();
    for x in points {
        image.insert(map.apply(x)?);
    }
    Ok(image.len())
}

/// `log|f(A)| <= sum a_i log|f_i(A)|`. Coefficients must be nonnegative.
pub fn check_cardinality(spec: &InequalitySpec, a: &BTreeSet<GroundElement>, cfg: &EvalConfig) -> Result<CheckReport> {
    spec.require_nonnegative()?;
    if a.is_empty() {
        return Err(Error::Domain("the set is empty".into()));
    }
    let lhs_size = image_size(&spec.lhs_map, a)?;
    let rhs_sizes = spec
        .rhs_maps
        .iter()
        .map(|m| image_size(m, a))
        .collect::<Result<Vec<_>>>()?;
    let lhs = cfg.base.log(lhs_size as f64);
    let rhs: f64 = rhs_sizes
        .iter()
        .zip(&spec.coefficients)
        .map(|(&s, c)| rational_to_f64(c) * cfg.base.log(s as f64))
        .sum();
    let slack = rhs - lhs;
    let (verdict, exact) = banded_verdict(slack, cfg.tolerance, || {
        let l = [(BigUint::from(lhs_size), BigRational::one())];
        let r: Vec<_> = rhs_sizes
            .iter()
            .zip(&spec.coefficients)
            .map(|(&s, c)| (BigUint::from(s), c.clone()))
            .collect();
        exact_power_compare(&l, &r, EXACT_BUDGET_BITS)
    });
    Ok(CheckReport::new("cardinality", verdict, Quantity::Float(lhs), Quantity::Float(rhs))
        .with_slack(slack)
        .with_exact(exact)
        .detail("lhs_size", lhs_size)
        .detail("rhs_sizes", rhs_sizes)
        .detail("base", cfg.base.to_string()))
}

/// `H(f(X)) <= sum a_i H(f_i(X))`. Negative coefficients are evaluated as
/// given.
pub fn check_entropy(spec: &InequalitySpec, x: &RationalDist, cfg: &EvalConfig) -> Result<CheckReport> {
    let lhs = entropy(&pushforward(&spec.lhs_map, x)?, cfg.base);
    let parts = spec
        .rhs_maps
        .iter()
        .map(|m| Ok(entropy(&pushforward(m, x)?, cfg.base)))
        .collect::<Result<Vec<f64>>>()?;
    let rhs: f64 = parts
        .iter()
        .zip(&spec.coefficients)
        .map(|(h, c)| rational_to_f64(c) * h)
        .sum();
    let slack = rhs - lhs;
    let mut report = CheckReport::new(
        "entropy",
        Verdict::from_bool(slack >= -cfg.tolerance),
        Quantity::Float(lhs),
        Quantity::Float(rhs),
    )
    .with_slack(slack)
    .detail("rhs_entropies", parts)
    .detail("base", cfg.base.to_string());
    if spec.coefficients.iter().any(|c| c.is_negative()) {
        report = report.detail("negative_coefficients", true);
    }
    Ok(report)
}

/// Uniform distribution on one representative per fiber of `f` over `A`,
/// the representative being the smallest element of the fiber. Its image
/// under `f` is uniform on `f(A)`.
pub fn lemma2_witness(a: &BTreeSet<GroundElement>, f: &FiniteMap) -> Result<RationalDist> {
    if a.is_empty() {
        return Err(Error::Domain("the set is empty".into()));
    }
    let mut reps: BTreeMap<&GroundElement, &GroundElement> = BTreeMap::new();
    for x in a {
        // ascending iteration: the first element seen in a fiber is its minimum
        reps.entry(f.apply(x)?).or_insert(x);
    }
    let chosen: BTreeSet<GroundElement> = reps.into_values().cloned().collect();
    RationalDist::uniform(chosen.into_iter().collect())
}

/// Runs the chain `log|f(A)| = H(f(X*)) <= sum a_i H(f_i(X*)) <= sum a_i log|f_i(A)|`
/// for the witness `X*` of [`lemma2_witness`]. The verdict is that of the
/// middle (entropy) inequality, which implies the cardinality inequality.
pub fn lemma2_bridge(spec: &InequalitySpec, a: &BTreeSet<GroundElement>, cfg: &EvalConfig) -> Result<CheckReport> {
    spec.require_nonnegative()?;
    let witness = lemma2_witness(a, &spec.lhs_map)?;
    let log_image = cfg.base.log(image_size(&spec.lhs_map, a)? as f64);
    let entropy_report = check_entropy(spec, &witness, cfg)?;
    let mut rhs_log = 0.0;
    for (m, c) in spec.rhs_maps.iter().zip(&spec.coefficients) {
        rhs_log += rational_to_f64(c) * cfg.base.log(image_size(m, a)? as f64);
    }
    let witness_entropy = entropy_report.lhs.as_f64();
    let witness_rhs = entropy_report.rhs.as_f64();
    Ok(CheckReport::new(
        "lemma2_bridge",
        entropy_report.verdict,
        Quantity::Float(log_image),
        Quantity::Float(rhs_log),
    )
    .with_slack(rhs_log - log_image)
    .detail("witness", serde_json::to_value(&witness).expect("serializable"))
    .detail("witness_image_entropy", witness_entropy)
    .detail("witness_rhs_entropy", witness_rhs)
    .detail("jensen_gap", rhs_log - witness_rhs))
}

/// Per-k row of [`empirical_lemma1`].
#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Row {
    pub k: u64,
    pub lhs_size: String,
    pub rhs_sizes: Vec<String>,
    pub verdict: Verdict,
    /// `log|f^k(R_k(X))| / k`
    pub lhs_rate: f64,
    /// `sum a_i log|f_i^k(R_k(X))| / k`
    pub rhs_rate: f64,
    /// Allowed distance between the set-side and entropy-side slacks.
    pub envelope: f64,
    pub within_envelope: bool,
}

/// Checks `|f^k(R_k(X))| <= prod |f_i^k(R_k(X))|^a_i` at every suitable
/// `k <= k_max`, counting image sets through the closed-form size of the
/// pushforward Ruzsa sets, and compares the per-coordinate log rates with the
/// entropy-side values.
///
/// With `cross_check` set, each image size is also counted by enumerating
/// `R_k(X)`, subject to that size limit.
pub fn empirical_lemma1(
    spec: &InequalitySpec,
    x: &RationalDist,
    k_max: u64,
    cross_check: Option<&BigUint>,
    cfg: &EvalConfig,
) -> Result<CheckReport> {
    spec.require_nonnegative()?;
    let ks = suitable_ks(x, k_max);
    if ks.is_empty() {
        return Err(Error::Suitability { k: k_max, minimal: minimal_suitable_k(x).to_string() });
    }
    let images: Vec<RationalDist> = spec.maps().map(|m| pushforward(m, x)).collect::<Result<_>>()?;
    let entropies: Vec<f64> = images.iter().map(|d| entropy(d, cfg.base)).collect();
    let coeffs: Vec<f64> = spec.coefficients.iter().map(rational_to_f64).collect();
    let entropy_lhs = entropies[0];
    let entropy_rhs: f64 = entropies[1..].iter().zip(&coeffs).map(|(h, c)| c * h).sum();
    let entropy_slack = entropy_rhs - entropy_lhs;

    let mut rows = Vec::with_capacity(ks.len());
    for &k in &ks {
        let sizes: Vec<BigUint> = images
            .iter()
            .map(|d| multinomial(&type_counts(d, k).expect("pushforward of a suitable k stays suitable")))
            .collect();
        if let Some(limit) = cross_check {
            let source = RuzsaSpec::new(x.clone(), k)?;
            for (map, closed) in spec.maps().zip(&sizes) {
                let mut seen = BTreeSet::new();
                for v in ruzsa_enumerate(&source, limit)? {
                    seen.insert(map.apply_power(&v.0)?);
                }
                if BigUint::from(seen.len()) != *closed {
                    return Err(Error::Domain(format!(
                        "enumerated image size {} disagrees with closed form {closed} at k = {k}",
                        seen.len()
                    )));
                }
            }
        }
        let logs: Vec<f64> = sizes.iter().map(|s| cfg.base.from_ln(ln_biguint(s))).collect();
        let lhs_log = logs[0];
        let rhs_log: f64 = logs[1..].iter().zip(&coeffs).map(|(l, c)| c * l).sum();
        let (verdict, _) = banded_verdict(rhs_log - lhs_log, cfg.tolerance, || {
            let l = [(sizes[0].clone(), BigRational::one())];
            let r: Vec<_> = sizes[1..].iter().cloned().zip(spec.coefficients.iter().cloned()).collect();
            exact_power_compare(&l, &r, EXACT_BUDGET_BITS)
        });
        let kf = k as f64;
        let per_var: Vec<f64> = images
            .iter()
            .map(|d| (d.len() as f64 - 1.0) * cfg.base.log(kf + 1.0) / kf)
            .collect();
        let envelope = per_var[0] + per_var[1..].iter().zip(&coeffs).map(|(e, c)| c.abs() * e).sum::<f64>();
        let set_slack = (rhs_log - lhs_log) / kf;
        let within_each = images
            .iter()
            .zip(&logs)
            .zip(&entropies)
            .zip(&per_var)
            .all(|(((_, l), h), e)| {
                let gap = h - l / kf;
                gap >= -cfg.tolerance && gap <= e + cfg.tolerance
            });
        let within = within_each && (set_slack - entropy_slack).abs() <= envelope + cfg.tolerance;
        rows.push(Lemma1Row {
            k,
            lhs_size: sizes[0].to_string(),
            rhs_sizes: sizes[1..].iter().map(|s| s.to_string()).collect(),
            verdict,
            lhs_rate: lhs_log / kf,
            rhs_rate: rhs_log / kf,
            envelope,
            within_envelope: within,
        });
    }
    let verdict = Verdict::all(rows.iter().map(|r| r.verdict));
    let envelope_ok = rows.iter().all(|r| r.within_envelope);
    Ok(CheckReport::new("lemma1", verdict, Quantity::Float(entropy_lhs), Quantity::Float(entropy_rhs))
        .with_slack(entropy_slack)
        .detail("ks", ks)
        .detail("rows", serde_json::to_value(&rows).expect("serializable"))
        .detail("envelope_holds", envelope_ok)
        .detail("cross_checked", cross_check.is_some()))
}

/// What an inequality is evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Set(PointSet),
    Dist(RationalDist),
}

/// Which statement of a set/entropy pair to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sets,
    Entropy,
}

impl Subject {
    fn dimension(&self) -> Result<usize> {
        match self {
            Subject::Set(a) => Ok(a.dimension()),
            Subject::Dist(x) => x
                .dimension()
                .ok_or_else(|| Error::Index("support tuples have mixed lengths".into())),
        }
    }

    /// The set itself, or the support of the distribution.
    pub fn as_set(&self) -> Result<PointSet> {
        match self {
            Subject::Set(a) => Ok(a.clone()),
            Subject::Dist(x) => PointSet::new(self.dimension()?, x.support().to_vec()),
        }
    }

    /// The distribution itself, or the uniform distribution on the set.
    pub fn as_dist(&self) -> Result<RationalDist> {
        match self {
            Subject::Set(a) => a.uniform(),
            Subject::Dist(x) => Ok(x.clone()),
        }
    }
}

fn require_cover_fits(cover: &CoverSpec, dimension: usize) -> Result<()> {
    if cover.n() != dimension {
        return Err(Error::Cover(format!("cover is over [{}] but the data has dimension {dimension}", cover.n())));
    }
    Ok(())
}

/// `|A|^k <= prod_S |A_S|` (sets) or `k H(X) <= sum_S H(X_S)` (entropy) for a
/// uniform k-cover.
pub fn check_shearer(subject: &Subject, cover: &CoverSpec, k: usize, side: Side, cfg: &EvalConfig) -> Result<CheckReport> {
    if !is_uniform_k_cover(cover, k).holds() {
        return Err(Error::Cover(format!("members do not form a uniform {k}-cover")));
    }
    require_cover_fits(cover, subject.dimension()?)?;
    match side {
        Side::Sets => {
            let a = subject.as_set()?;
            let sizes = cover
                .members()
                .iter()
                .map(|s| Ok(project_set(&a, s)?.len()))
                .collect::<Result<Vec<usize>>>()?;
            let lhs = BigUint::from(a.len()).pow(k as u32);
            let rhs = sizes.iter().fold(BigUint::one(), |acc, &s| acc * BigUint::from(s));
            let slack = cfg.base.from_ln(ln_biguint(&rhs) - ln_biguint(&lhs));
            Ok(CheckReport::new("shearer_sets", Verdict::from_bool(lhs <= rhs), Quantity::Integer(lhs), Quantity::Integer(rhs))
                .with_slack(slack)
                .detail("set_size", a.len())
                .detail("projection_sizes", sizes))
        }
        Side::Entropy => {
            let x = subject.as_dist()?;
            let h = entropy(&x, cfg.base);
            let parts = cover
                .members()
                .iter()
                .map(|s| marginal_entropy(&x, s, cfg.base))
                .collect::<Result<Vec<f64>>>()?;
            let lhs = k as f64 * h;
            let rhs: f64 = parts.iter().sum();
            let slack = rhs - lhs;
            Ok(CheckReport::new(
                "shearer_entropy",
                Verdict::from_bool(slack >= -cfg.tolerance),
                Quantity::Float(lhs),
                Quantity::Float(rhs),
            )
            .with_slack(slack)
            .detail("projection_entropies", parts))
        }
    }
}

/// `|A| <= prod_S |A_S | A_{S_*}|^w(S)` (sets) or
/// `H(X) <= sum_S w(S) H(X_S | X_{S_*})` (entropy) for a fractional cover `w`.
/// Zero-weight members are ignored.
pub fn check_projection_theorem(subject: &Subject, cover: &CoverSpec, side: Side, cfg: &EvalConfig) -> Result<CheckReport> {
    let cover_report = is_fractional_cover(cover)?;
    if !cover_report.holds() {
        return Err(Error::Cover("weights do not form a fractional cover".into()));
    }
    require_cover_fits(cover, subject.dimension()?)?;
    let members = cover.weighted_members()?;
    match side {
        Side::Sets => {
            let a = subject.as_set()?;
            let lhs = cfg.base.log(a.len() as f64);
            let mut rhs = 0.0;
            let mut factors = Vec::with_capacity(members.len());
            let mut exact_rhs: Vec<(BigUint, BigRational)> = Vec::new();
            for (s, w) in &members {
                let terms = conditional_terms(&a, s, &s_star(s))?;
                let log_size: f64 = terms
                    .iter()
                    .map(|t| rational_to_f64(&t.mass) * cfg.base.log(t.size as f64))
                    .sum();
                rhs += rational_to_f64(w) * log_size;
                factors.push(log_size);
                for t in terms {
                    exact_rhs.push((BigUint::from(t.size), &t.mass * *w));
                }
            }
            let slack = rhs - lhs;
            let (verdict, exact) = banded_verdict(slack, cfg.tolerance, || {
                exact_power_compare(&[(BigUint::from(a.len()), BigRational::one())], &exact_rhs, EXACT_BUDGET_BITS)
            });
            Ok(CheckReport::new("projection_sets", verdict, Quantity::Float(lhs), Quantity::Float(rhs))
                .with_slack(slack)
                .with_exact(exact)
                .detail("log_conditional_sizes", factors))
        }
        Side::Entropy => {
            let x = subject.as_dist()?;
            let lhs = entropy(&x, cfg.base);
            let mut rhs = 0.0;
            let mut parts = Vec::with_capacity(members.len());
            for (s, w) in &members {
                let h = conditional_entropy(&x, s, &s_star(s), cfg.base)?;
                rhs += rational_to_f64(w) * h;
                parts.push(h);
            }
            let slack = rhs - lhs;
            Ok(CheckReport::new(
                "projection_entropy",
                Verdict::from_bool(slack >= -cfg.tolerance),
                Quantity::Float(lhs),
                Quantity::Float(rhs),
            )
            .with_slack(slack)
            .detail("conditional_entropies", parts))
        }
    }
}

/// Members `[n] \ {i}` for `i = 1..n`.
pub fn hyperplanes(n: usize) -> Result<Vec<IndexSet>> {
    (1..=n)
        .map(|i| IndexSet::new((1..=n).filter(|&j| j != i).collect()))
        .collect()
}

/// Loomis-Whitney, `|A|^(n-1) <= prod_i |A_{[n] \ i}|`, as a cardinality check
/// with coefficients `1/(n-1)`.
pub fn loomis_whitney(a: &PointSet, cfg: &EvalConfig) -> Result<CheckReport> {
    let n = a.dimension();
    if n < 2 {
        return Err(Error::Index("Loomis-Whitney needs dimension >= 2".into()));
    }
    let c = BigRational::new(BigInt::one(), BigInt::from(n - 1));
    let spec = InequalitySpec::projections(a.points(), &hyperplanes(n)?, vec![c; n])?;
    let mut r = check_cardinality(&spec, a.points(), cfg)?;
    r.check = "loomis_whitney".into();
    Ok(r)
}

/// Han, `(n-1) H(X) <= sum_i H(X_{[n] \ i})`, as an entropy check with
/// coefficients `1/(n-1)`.
pub fn han(x: &RationalDist, cfg: &EvalConfig) -> Result<CheckReport> {
    let n = x
        .dimension()
        .ok_or_else(|| Error::Index("support tuples have mixed lengths".into()))?;
    if n < 2 {
        return Err(Error::Index("Han's inequality needs dimension >= 2".into()));
    }
    let c = BigRational::new(BigInt::one(), BigInt::from(n - 1));
    let spec = InequalitySpec::projections(x.support(), &hyperplanes(n)?, vec![c; n])?;
    let mut r = check_entropy(&spec, x, cfg)?;
    r.check = "han".into();
    Ok(r)
}

/// Closed-form Ruzsa set size of `X`, reported alongside its enumerated count.
pub fn ruzsa_count_report(spec: &RuzsaSpec, limit: &BigUint) -> Result<CheckReport> {
    let closed = ruzsa_size(spec);
    let counted = ruzsa_enumerate(spec, limit)?.count();
    let counted = BigUint::from(counted);
    Ok(CheckReport::new(
        "ruzsa_count",
        Verdict::from_bool(closed == counted),
        Quantity::Integer(counted),
        Quantity::Integer(closed),
    )
    .witness(json!({"k": spec.k()})))
}
