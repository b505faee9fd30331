use std::collections::BTreeSet;

use entcard_core::checkers::{
    check_cardinality, check_entropy, check_projection_theorem, check_shearer, empirical_lemma1, lemma2_bridge,
    lemma2_witness,
};
use entcard_core::dist::{entropy, pushforward};
use entcard_core::projections::{marginal_entropy, project_set};
use entcard_core::random::{random_dist, random_fractional_cover, random_map, random_point_set, rng};
use entcard_core::{CoverSpec, EvalConfig, IndexSet, InequalitySpec, LogBase, Side, Subject, Verdict};
use proptest::prelude::*;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projection_theorem_sets(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let a = random_point_set(&mut r, n, 4, 1, 32);
        let cover = random_fractional_cover(&mut r, n, 6, 12);
        let report = check_projection_theorem(&Subject::Set(a), &cover, Side::Sets, &cfg()).unwrap();
        prop_assert!(report.slack.unwrap() >= -1e-9);
        prop_assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn projection_theorem_entropy(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let x = random_dist(&mut r, n, 4, 32, 12);
        let cover = random_fractional_cover(&mut r, n, 6, 12);
        let report = check_projection_theorem(&Subject::Dist(x), &cover, Side::Entropy, &cfg()).unwrap();
        prop_assert!(report.slack.unwrap() >= -1e-9);
    }

    #[test]
    fn shearer_with_hyperplanes_is_han(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let x = random_dist(&mut r, n, 3, 16, 12);
        let cover = CoverSpec::all_subsets_of_size(n, n - 1).unwrap();
        let shearer = check_shearer(&Subject::Dist(x.clone()), &cover, n - 1, Side::Entropy, &cfg()).unwrap();
        // direct Han: (n - 1) H(X) against the sum over dropped coordinates
        let lhs = (n - 1) as f64 * entropy(&x, LogBase::Two);
        let rhs: f64 = (1..=n)
            .map(|i| {
                let keep = IndexSet::new((1..=n).filter(|&j| j != i).collect()).unwrap();
                marginal_entropy(&x, &keep, LogBase::Two).unwrap()
            })
            .sum();
        prop_assert!((shearer.lhs.as_f64() - lhs).abs() < 1e-12);
        prop_assert!((shearer.rhs.as_f64() - rhs).abs() < 1e-12);
        prop_assert!(shearer.holds());
    }

    #[test]
    fn cardinality_and_shearer_agree(seed: u64, n in 2usize..=4, size in 1usize..=3) {
        prop_assume!(size <= n);
        let mut r = rng(seed);
        let a = random_point_set(&mut r, n, 3, 1, 27);
        let cover = CoverSpec::all_subsets_of_size(n, size).unwrap();
        let k = cover.multiplicities()[0];
        let shearer = check_shearer(&Subject::Set(a.clone()), &cover, k, Side::Sets, &cfg()).unwrap();
        let coeff = entcard_core::BigRational::new(1.into(), k.into());
        let spec = InequalitySpec::projections(a.points(), cover.members(), vec![coeff; cover.members().len()]).unwrap();
        let card = check_cardinality(&spec, a.points(), &cfg()).unwrap();
        prop_assert_eq!(shearer.verdict, card.verdict);
        // same projection sizes through both routes
        let sizes: Vec<usize> = cover.members().iter().map(|s| project_set(&a, s).unwrap().len()).collect();
        prop_assert_eq!(&shearer.details["projection_sizes"], &serde_json::json!(sizes));
        prop_assert_eq!(&card.details["rhs_sizes"], &serde_json::json!(sizes));
    }

    #[test]
    fn witness_bridge_matches_cardinality(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let a = random_point_set(&mut r, n, 3, 1, 27);
        let cover = random_fractional_cover(&mut r, n, 5, 12);
        let (members, weights): (Vec<IndexSet>, Vec<_>) =
            cover.members().iter().cloned().zip(cover.weights().unwrap().iter().cloned()).unzip();
        let spec = InequalitySpec::projections(a.points(), &members, weights).unwrap();
        let bridge = lemma2_bridge(&spec, a.points(), &cfg()).unwrap();
        let card = check_cardinality(&spec, a.points(), &cfg()).unwrap();
        prop_assert!(bridge.holds());
        prop_assert_eq!(bridge.verdict, card.verdict);
        prop_assert!((bridge.lhs.as_f64() - bridge.details["witness_image_entropy"].as_f64().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn witness_image_is_uniform(seed: u64) {
        let mut r = rng(seed);
        let a = random_point_set(&mut r, 2, 4, 1, 16);
        let f = random_map(&mut r, a.points(), 5);
        let w = lemma2_witness(a.points(), &f).unwrap();
        let image: BTreeSet<_> = a.points().iter().map(|x| f.apply(x).unwrap().clone()).collect();
        let fw = pushforward(&f, &w).unwrap();
        prop_assert_eq!(fw.len(), image.len());
        prop_assert!((entropy(&fw, LogBase::Two) - (image.len() as f64).log2()).abs() < 1e-12);
        // representatives are fiber minima
        for x in w.support() {
            let y = f.apply(x).unwrap();
            prop_assert!(a.points().iter().filter(|p| f.apply(p).unwrap() == y).all(|p| p >= x));
        }
    }

    #[test]
    fn lemma1_rates_stay_in_envelope(seed: u64) {
        let mut r = rng(seed);
        let x = random_dist(&mut r, 2, 3, 4, 4);
        let spec = InequalitySpec::projections(
            x.support(),
            &[IndexSet::new(vec![1]).unwrap(), IndexSet::new(vec![2]).unwrap()],
            vec![entcard_core::BigRational::from_integer(1.into()); 2],
        )
        .unwrap();
        let report = empirical_lemma1(&spec, &x, 24, None, &cfg()).unwrap();
        prop_assert!(report.holds());
        prop_assert_eq!(&report.details["envelope_holds"], &serde_json::json!(true));
    }

    #[test]
    fn subadditivity_entropy_side(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let x = random_dist(&mut r, n, 3, 16, 12);
        let singles: Vec<IndexSet> = (1..=n).map(|i| IndexSet::new(vec![i]).unwrap()).collect();
        let spec = InequalitySpec::projections(
            x.support(),
            &singles,
            vec![entcard_core::BigRational::from_integer(1.into()); n],
        )
        .unwrap();
        prop_assert!(check_entropy(&spec, &x, &cfg()).unwrap().holds());
    }
}
