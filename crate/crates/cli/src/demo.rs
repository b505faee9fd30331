use std::path::Path;

use anyhow::{bail, Result};
use entcard_core::checkers::{empirical_lemma1, han, hyperplanes, loomis_whitney};
use entcard_core::dist::minimal_suitable_k;
use entcard_core::random::{random_points, rng};
use entcard_core::ruzsa::{convergence_profile, suitable_ks};
use entcard_core::{BigRational, InequalitySpec, PointSet, Verdict};
use rand::seq::SliceRandom;
use serde_json::json;

use crate::input::read;
use crate::output::Outcome;
use crate::Global;

/// Sizes the random demo set is drawn from; each divides 12, so the default
/// `kmax` always has suitable k.
const DEMO_SIZES: [usize; 3] = [3, 4, 6];

/// Loomis-Whitney on a set, Han on its uniform distribution, then the same
/// inequality on Ruzsa sets at growing k.
pub fn run(input: Option<&Path>, kmax: u64, g: &Global) -> Result<Outcome> {
    let a = match input {
        Some(path) => read::<PointSet>(path)?,
        None => {
            let mut r = rng(g.seed);
            let size = *DEMO_SIZES.choose(&mut r).expect("nonempty");
            PointSet::new(3, random_points(&mut r, 3, 3, size))?
        }
    };
    let n = a.dimension();
    if n < 2 {
        bail!("the demo needs a point set of dimension >= 2");
    }
    let cfg = g.eval();
    let x = a.uniform()?;
    let ks = suitable_ks(&x, kmax);
    if ks.is_empty() {
        bail!("|A| = {} has no multiple up to --kmax {kmax}; the smallest suitable k is {}", a.len(), minimal_suitable_k(&x));
    }

    let lw = loomis_whitney(&a, &cfg)?;
    let han = han(&x, &cfg)?;
    let coeff = BigRational::new(1.into(), (n as i64 - 1).into());
    let spec = InequalitySpec::projections(a.points(), &hyperplanes(n)?, vec![coeff; n])?;
    let lemma1 = empirical_lemma1(&spec, &x, kmax, None, &cfg)?;
    let convergence = convergence_profile(&x, &ks, g.base, g.tolerance)?;
    let converged = Verdict::from_bool(convergence.iter().all(|r| r.within_envelope));
    let verdict = Verdict::all([lw.verdict, han.verdict, lemma1.verdict, converged]);

    let doc = json!({
        "seed": g.seed,
        "set": a,
        "loomis_whitney": lw,
        "han": han,
        "lemma1": lemma1,
        "convergence": convergence,
        "verdict": verdict,
    });
    Ok(Outcome::check(doc, verdict))
}
