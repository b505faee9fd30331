use entcard_core::covers::{is_fractional_cover, is_uniform_k_cover, min_fractional_cover, scaled_uniform};
use entcard_core::random::{random_feasible_weights, random_members, rng};
use entcard_core::{BigRational, CoverSpec, IndexSet};
use num_traits::One;
use proptest::prelude::*;
use rand::seq::SliceRandom;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lp_solution_is_a_cover_and_beats_feasible_points(seed: u64, n in 1usize..=8, m in 1usize..=20) {
        let mut r = rng(seed);
        let members = random_members(&mut r, n, m);
        let sol = min_fractional_cover(n, &members).unwrap();
        let cover = CoverSpec::new(n, members.clone(), Some(sol.weights.clone())).unwrap();
        prop_assert!(is_fractional_cover(&cover).unwrap().holds());
        prop_assert_eq!(cover.coverage().unwrap(), sol.certificate.clone());
        let total = sol.weights.iter().fold(BigRational::from_integer(0.into()), |a, w| a + w);
        prop_assert_eq!(&total, &sol.objective);
        for _ in 0..10 {
            let w = random_feasible_weights(&mut r, n, &members);
            let feasible = CoverSpec::new(n, members.clone(), Some(w.clone())).unwrap();
            prop_assert!(is_fractional_cover(&feasible).unwrap().holds());
            let obj = w.iter().fold(BigRational::from_integer(0.into()), |a, x| a + x);
            prop_assert!(sol.objective <= obj);
        }
    }

    #[test]
    fn lp_objective_ignores_member_order(seed: u64, n in 1usize..=6, m in 1usize..=12) {
        let mut r = rng(seed);
        let members = random_members(&mut r, n, m);
        let mut shuffled = members.clone();
        shuffled.shuffle(&mut r);
        prop_assert_eq!(
            min_fractional_cover(n, &members).unwrap().objective,
            min_fractional_cover(n, &shuffled).unwrap().objective
        );
    }

    #[test]
    fn scaled_uniform_covers_are_tight(n in 2usize..=6, size in 1usize..=5) {
        prop_assume!(size <= n);
        let cover = CoverSpec::all_subsets_of_size(n, size).unwrap();
        let k = cover.multiplicities()[0];
        prop_assert!(is_uniform_k_cover(&cover, k).holds());
        let scaled = scaled_uniform(&cover, k).unwrap();
        prop_assert!(scaled.coverage().unwrap().iter().all(|c| c.is_one()));
        prop_assert!(is_fractional_cover(&scaled).unwrap().holds());
    }
}

#[test]
fn lp_on_stars_and_cycles() {
    // 5-cycle edges: optimum 5/2
    let cycle: Vec<IndexSet> = (1..=5).map(|i| IndexSet::new(vec![i, i % 5 + 1]).unwrap()).collect();
    let sol = min_fractional_cover(5, &cycle).unwrap();
    assert_eq!(sol.objective, BigRational::new(5.into(), 2.into()));
    // Fano plane lines: optimum 7/3
    let lines = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
    let members: Vec<IndexSet> = lines.iter().map(|l| IndexSet::new(l.to_vec()).unwrap()).collect();
    let sol = min_fractional_cover(7, &members).unwrap();
    assert_eq!(sol.objective, BigRational::new(7.into(), 3.into()));
}
