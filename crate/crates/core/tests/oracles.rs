use halrect::reference::{
    extend, group_views, grow, lipschitz_reference_ids, pareto_gl_reference, scrambled_problem,
};
use halrect::selection::{group_reps, poh_aggressive, poh_lipschitz, poh_pareto_gl};
use halrect::{Aggregation, PartitionState};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = (PartitionState, halrect::Problem)> {
    (
        1usize..=4,
        any::<u64>(),
        1u64..6,
        prop::sample::select(Aggregation::ALL.to_vec()),
        prop::collection::vec(any::<u64>(), 0..150),
    )
        .prop_map(|(n, seed, levels, agg, steps)| {
            let problem = scrambled_problem(n, seed, levels).unwrap();
            (grow(&problem, agg, steps).unwrap(), problem)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn group_representatives_match_a_direct_scan((state, _p) in partition()) {
        let reps = group_reps(&state);
        let views = group_views(&state);
        prop_assert_eq!(reps.len(), views.len());
        for (r, v) in reps.iter().zip(&views) {
            prop_assert_eq!(r.delta.to_bits(), v.delta.to_bits());
            prop_assert_eq!(r.best_rect_id, v.best);
            prop_assert_eq!(r.best_f.to_bits(), v.best_f.to_bits());
        }
    }

    #[test]
    fn lipschitz_matches_reference((state, _p) in partition(), eps in prop::sample::select(vec![0.0, 1e-4, 1e-2])) {
        prop_assert!(state.group_count() <= 50);
        let fast = poh_lipschitz(&state, eps).unwrap().selected;
        prop_assert_eq!(fast, lipschitz_reference_ids(&state, eps));
    }

    #[test]
    fn pareto_gl_matches_reference((mut state, problem) in partition(), more in prop::collection::vec(any::<u64>(), 0..30)) {
        let expected = pareto_gl_reference(&group_views(&state));
        prop_assert_eq!(&poh_pareto_gl(&state).unwrap().selected, &expected);
        state.refresh_nearest();
        prop_assert!(state.nearest_is_current());
        prop_assert_eq!(&poh_pareto_gl(&state).unwrap().selected, &expected);
        // incremental cache updates
        extend(&mut state, &problem, more).unwrap();
        let expected = pareto_gl_reference(&group_views(&state));
        prop_assert_eq!(poh_pareto_gl(&state).unwrap().selected, expected);
    }

    #[test]
    fn aggressive_takes_every_group_above_the_floor((state, _p) in partition(), floor in 0.0f64..1.0) {
        let views = group_views(&state);
        let expected: Vec<_> = views
            .iter()
            .enumerate()
            .filter(|(i, g)| *i == 0 || g.delta >= floor)
            .map(|(_, g)| g.best)
            .collect();
        prop_assert_eq!(poh_aggressive(&state, floor).unwrap().selected, expected);
    }

    #[test]
    fn every_scheme_includes_the_largest_group((state, _p) in partition()) {
        let top = group_views(&state)[0].best;
        let largest = state.groups().next().unwrap().1;
        let members: Vec<_> = largest.members().map(|m| m.id()).collect();
        prop_assert!(members.contains(&top));
        for selected in [
            poh_lipschitz(&state, 1e-4).unwrap().selected,
            poh_aggressive(&state, 2.0).unwrap().selected,
            poh_pareto_gl(&state).unwrap().selected,
        ] {
            prop_assert!(selected.iter().any(|id| members.contains(id)));
        }
    }
}
