use std::path::Path;

use anyhow::{bail, Result};
use entcard_core::checkers::{
    check_cardinality, check_entropy, check_projection_theorem, check_shearer, empirical_lemma1, lemma2_witness,
};
use entcard_core::covers::{is_fractional_cover, is_uniform_k_cover, min_fractional_cover};
use entcard_core::dist::{entropy, is_suitable, minimal_suitable_k, pushforward, rationalize};
use entcard_core::projections::{
    conditional_avg_size, conditional_entropy, conditional_log_avg_size, conditional_terms, project_rv, project_set,
};
use entcard_core::rational::format_rational;
use entcard_core::ruzsa::{
    convergence_profile, preimage_lift, ruzsa_enumerate, ruzsa_size, suitable_ks, type_bound_check,
    verify_commutation,
};
use entcard_core::{
    CheckReport, CoverSpec, FiniteMap, InequalitySource, PointSet, RationalDist, RuzsaSpec, Side, Subject, Verdict,
};
use serde_json::{json, Value};

use crate::input::{self, read, read_subject};
use crate::output::Outcome;
use crate::{CheckOp, Cli, Command, CoverOp, Global, RuzsaArgs, RuzsaOp, WitnessOp};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Entropy { dist } => {
            let x: RationalDist = read(dist)?;
            Ok(Outcome::info(json!({"entropy": entropy(&x, g.base), "base": g.base.to_string()})))
        }
        Command::Pushforward { dist, map } => {
            let x: RationalDist = read(dist)?;
            let f: FiniteMap = read(map)?;
            let y = pushforward(&f, &x)?;
            Ok(Outcome::info(json!({
                "pushforward": y,
                "entropy_before": entropy(&x, g.base),
                "entropy_after": entropy(&y, g.base),
            })))
        }
        Command::Suitable { dist, k } => {
            let x: RationalDist = read(dist)?;
            let mut doc = json!({"minimal_k": minimal_suitable_k(&x).to_string()});
            if let Some(k) = k {
                doc["k"] = json!(k);
                doc["suitable"] = json!(is_suitable(&x, *k));
            }
            Ok(Outcome::info(doc))
        }
        Command::Rationalize { weights, max_denominator } => {
            let w: input::WeightsInput = read(weights)?;
            let support = w.support.clone();
            let x = rationalize(w.support, &w.weights, *max_denominator)?;
            let total = w.weights.iter().sum::<f64>();
            let tv: f64 = support
                .iter()
                .zip(&w.weights)
                .map(|(s, wi)| (entcard_core::rational::rational_to_f64(&x.prob_of(s)) - wi / total).abs())
                .sum::<f64>()
                / 2.0;
            Ok(Outcome::info(json!({"dist": x, "total_variation": tv})))
        }
        Command::Ruzsa { op } => ruzsa(op, g),
        Command::Project { set, dist, indices } => {
            let s = input::index_set(indices)?;
            if let Some(path) = set {
                let a: PointSet = read(path)?;
                let p = project_set(&a, &s)?;
                Ok(Outcome::info(json!({"indices": s, "size": p.len(), "projection": p})))
            } else {
                let x: RationalDist = read(dist.as_deref().expect("clap requires one input"))?;
                let p = project_rv(&x, &s)?;
                Ok(Outcome::info(json!({"indices": s, "entropy": entropy(&p, g.base), "projection": p})))
            }
        }
        Command::Condsize { set, t, s } => {
            let a: PointSet = read(set)?;
            let (t, s) = (input::index_set(t)?, input::index_set(s)?);
            let terms: Vec<Value> = conditional_terms(&a, &t, &s)?
                .iter()
                .map(|term| json!({"mass": format_rational(&term.mass), "size": term.size}))
                .collect();
            Ok(Outcome::info(json!({
                "t": t,
                "s": s,
                "avg_size": conditional_avg_size(&a, &t, &s)?,
                "log_avg_size": conditional_log_avg_size(&a, &t, &s, g.base)?,
                "terms": terms,
            })))
        }
        Command::Condentropy { dist, s, c } => {
            let x: RationalDist = read(dist)?;
            let (s, c) = (input::index_set(s)?, input::index_set(c)?);
            let h = conditional_entropy(&x, &s, &c, g.base)?;
            Ok(Outcome::info(json!({"s": s, "c": c, "entropy": h, "base": g.base.to_string()})))
        }
        Command::Cover { op } => cover(op),
        Command::Check { op } => check(op, g),
        Command::Witness { op: WitnessOp::Lemma2 { set, map } } => {
            let a: PointSet = read(set)?;
            let f: FiniteMap = read(map)?;
            let w = lemma2_witness(a.points(), &f)?;
            let image = pushforward(&f, &w)?;
            Ok(Outcome::info(json!({
                "witness": w,
                "image_size": image.len(),
                "log_image_size": g.base.log(image.len() as f64),
                "image_entropy": entropy(&image, g.base),
            })))
        }
        Command::Demo { input, kmax } => crate::demo::run(input.as_deref(), *kmax, g),
    }
}

fn ruzsa_spec(args: &RuzsaArgs) -> Result<RuzsaSpec> {
    let x: RationalDist = read(&args.dist)?;
    Ok(match args.k {
        Some(k) => RuzsaSpec::new(x, k)?,
        None => RuzsaSpec::minimal(x)?,
    })
}

fn report(r: CheckReport) -> Outcome {
    let verdict = r.verdict;
    Outcome::check(serde_json::to_value(r).expect("reports serialize"), verdict)
}

fn ruzsa(op: &RuzsaOp, g: &Global) -> Result<Outcome> {
    match op {
        RuzsaOp::Size(args) => {
            let spec = ruzsa_spec(args)?;
            Ok(Outcome::info(json!({
                "k": spec.k(),
                "counts": spec.counts(),
                "size": ruzsa_size(&spec).to_string(),
            })))
        }
        RuzsaOp::Enum(args) => {
            let spec = ruzsa_spec(args)?;
            let vectors: Vec<Value> = ruzsa_enumerate(&spec, &g.limit)?.map(|v| json!(v.0)).collect();
            Ok(Outcome::info(json!({"k": spec.k(), "size": vectors.len().to_string(), "vectors": vectors})))
        }
        RuzsaOp::Commute { ruzsa, map } => {
            let spec = ruzsa_spec(ruzsa)?;
            let f: FiniteMap = read(map)?;
            Ok(report(verify_commutation(&f, &spec, &g.limit)?))
        }
        RuzsaOp::Lift { ruzsa, map, y } => {
            let spec = ruzsa_spec(ruzsa)?;
            let f: FiniteMap = read(map)?;
            let y = input::vector(y)?;
            let x = preimage_lift(&f, &spec, &y)?;
            let member = x.is_member(&spec);
            let maps_to_y = f.apply_power(&x.0)? == y.0;
            Ok(Outcome::check(
                json!({"k": spec.k(), "y": y.0, "x": x.0, "member": member, "maps_to_y": maps_to_y}),
                Verdict::from_bool(member && maps_to_y),
            ))
        }
        RuzsaOp::Bound(args) => Ok(report(type_bound_check(&ruzsa_spec(args)?))),
        RuzsaOp::Converge { dist, ks, kmax } => {
            let x: RationalDist = read(dist)?;
            let ks = match ks {
                Some(text) => input::u64_list(text)?,
                None => suitable_ks(&x, *kmax),
            };
            if ks.is_empty() {
                bail!("no suitable k up to {kmax}; the smallest is {}", minimal_suitable_k(&x));
            }
            let rows = convergence_profile(&x, &ks, g.base, g.tolerance)?;
            let ok = rows.iter().all(|r| r.within_envelope);
            Ok(Outcome::check(
                json!({"entropy": entropy(&x, g.base), "rows": rows, "verdict": Verdict::from_bool(ok)}),
                Verdict::from_bool(ok),
            ))
        }
    }
}

fn cover(op: &CoverOp) -> Result<Outcome> {
    match op {
        CoverOp::Check { cover, k: Some(k) } => {
            let c: CoverSpec = read(cover)?;
            Ok(report(is_uniform_k_cover(&c, *k)))
        }
        CoverOp::Check { cover, k: None } => {
            let c: CoverSpec = read(cover)?;
            if c.weights().is_none() {
                bail!("{}: a fractional cover check needs \"weights\"", cover.display());
            }
            Ok(report(is_fractional_cover(&c)?))
        }
        CoverOp::Min { cover } => {
            let c: CoverSpec = read(cover)?;
            let sol = min_fractional_cover(c.n(), c.members())?;
            let mut doc = serde_json::to_value(&sol)?;
            doc["members"] = json!(c.members());
            Ok(Outcome::info(doc))
        }
    }
}

fn default_side(subject: &Subject) -> Side {
    match subject {
        Subject::Set(_) => Side::Sets,
        Subject::Dist(_) => Side::Entropy,
    }
}

fn inequality(spec: &Path, subject: &Subject) -> Result<entcard_core::InequalitySpec> {
    let source: InequalitySource = read(spec)?;
    let domain: Vec<_> = subject.as_set()?.points().iter().cloned().collect();
    Ok(source.resolve(&domain)?)
}

fn check(op: &CheckOp, g: &Global) -> Result<Outcome> {
    let cfg = g.eval();
    match op {
        CheckOp::Entropy { spec, input } => {
            let subject = read_subject(input)?;
            let ineq = inequality(spec, &subject)?;
            Ok(report(check_entropy(&ineq, &subject.as_dist()?, &cfg)?))
        }
        CheckOp::Cardinality { spec, input } => {
            let subject = read_subject(input)?;
            let ineq = inequality(spec, &subject)?;
            Ok(report(check_cardinality(&ineq, subject.as_set()?.points(), &cfg)?))
        }
        CheckOp::Shearer { cover, k, input, side } => {
            let subject = read_subject(input)?;
            let c: CoverSpec = read(cover)?;
            let side = side.unwrap_or_else(|| default_side(&subject));
            Ok(report(check_shearer(&subject, &c, *k, side, &cfg)?))
        }
        CheckOp::Projection { cover, input, side } => {
            let subject = read_subject(input)?;
            let c: CoverSpec = read(cover)?;
            let side = side.unwrap_or_else(|| default_side(&subject));
            Ok(report(check_projection_theorem(&subject, &c, side, &cfg)?))
        }
        CheckOp::Lemma1 { spec, input, kmax, cross_check } => {
            let subject = read_subject(input)?;
            let ineq = inequality(spec, &subject)?;
            let limit = cross_check.then_some(&g.limit);
            Ok(report(empirical_lemma1(&ineq, &subject.as_dist()?, *kmax, limit, &cfg)?))
        }
    }
}
