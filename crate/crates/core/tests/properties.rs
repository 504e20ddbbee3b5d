use std::cmp::Ordering;

use halrect::partition::{apply_subdivision, select_branching_coordinate};
use halrect::reference::{extend, grow, lipschitz_reference, scrambled_problem};
use halrect::selection::{break_ties, lipschitz_select, tie_order};
use halrect::{measure_from_depths, Aggregation, PartitionState};
use proptest::prelude::*;

fn aggregation() -> impl Strategy<Value = Aggregation> {
    prop::sample::select(Aggregation::ALL.to_vec())
}

fn check_partition_bounds(state: &PartitionState) -> Result<(), TestCaseError> {
    let n = state.dim();
    let store = state.store();
    let mut volume = 0.0;
    for rect in state.live_rects() {
        prop_assert!(rect.rep_set().len() <= 2 * n + 1, "rep set of {} too large", rect.id());
        let min = rect
            .rep_set()
            .iter()
            .map(|&h| store.fval(h))
            .fold(f64::INFINITY, f64::min);
        prop_assert!(min <= store.fval(rect.mid_id()));
        volume += rect.volume();
    }
    prop_assert!((volume - 1.0).abs() <= 1e-12, "volume {volume}");
    prop_assert_eq!(state.m(), store.len());
    state.check_invariants().map_err(TestCaseError::fail)?;
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn partition_bounds_hold_after_random_subdivisions(
        n in 1usize..=6,
        seed: u64,
        levels in 1u64..8,
        agg in aggregation(),
        steps in prop::collection::vec(any::<u64>(), 0..120),
    ) {
        let problem = scrambled_problem(n, seed, levels).unwrap();
        let state = grow(&problem, agg, steps).unwrap();
        check_partition_bounds(&state)?;
    }

    #[test]
    fn each_subdivision_tiles_its_parent(
        n in 1usize..=5,
        seed: u64,
        steps in prop::collection::vec(any::<u64>(), 0..40),
        pick: prop::sample::Index,
    ) {
        let problem = scrambled_problem(n, seed, 5).unwrap();
        let mut state = grow(&problem, Aggregation::MidMinAverage, steps).unwrap();
        let ids: Vec<_> = state.live_rects().map(|r| r.id()).collect();
        let parent = state.rect(*pick.get(&ids)).unwrap().clone();
        let c_min = state.c_min().to_vec();
        let br = select_branching_coordinate(&parent, state.store(), &c_min);
        let (l, r) = apply_subdivision(&mut state, parent.id(), &problem, &c_min).unwrap();
        let (left, right) = (state.rect(l).unwrap(), state.rect(r).unwrap());
        let store = state.store();
        for child in [left, right] {
            for j in 0..n {
                let expected = parent.depth()[j] + u16::from(j == br);
                prop_assert_eq!(child.depth()[j], expected);
            }
            prop_assert!(child.rep_set().contains(&parent.mid_id()));
            for &h in child.rep_set() {
                prop_assert!(child.contains(store, store.point(h)));
            }
        }
        prop_assert_eq!(left.volume() + right.volume(), parent.volume());
        prop_assert_eq!(left.lo(store), parent.lo(store));
        prop_assert_eq!(right.hi(store), parent.hi(store));
        prop_assert_eq!(left.hi(store)[br], right.lo(store)[br]);
    }

    #[test]
    fn replay_is_bitwise_identical(n in 1usize..=4, seed: u64, steps in prop::collection::vec(any::<u64>(), 0..60)) {
        let problem = scrambled_problem(n, seed, 6).unwrap();
        let a = grow(&problem, Aggregation::Mean, steps.clone()).unwrap();
        let b = grow(&problem, Aggregation::Mean, steps).unwrap();
        let bits = |s: &PartitionState| -> Vec<u64> {
            s.store().iter().flat_map(|(_, c, f)| c.iter().chain([&f]).map(|v| v.to_bits()).collect::<Vec<_>>()).collect()
        };
        prop_assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn groups_share_exact_measure(n in 1usize..=6, seed: u64, steps in prop::collection::vec(any::<u64>(), 0..80)) {
        let problem = scrambled_problem(n, seed, 3).unwrap();
        let state = grow(&problem, Aggregation::Minimum, steps).unwrap();
        for (key, group) in state.groups() {
            prop_assert_eq!(group.delta().to_bits(), measure_from_depths(key.depths()).to_bits());
            for member in group.members() {
                let rect = state.rect(member.id()).unwrap();
                prop_assert_eq!(rect.measure().to_bits(), group.delta().to_bits());
            }
        }
    }

    #[test]
    fn tie_order_is_a_total_order(
        lists in prop::collection::vec((prop::collection::vec(0u8..3, 1..5), 1usize..6), 3),
    ) {
        let items: Vec<(Vec<f64>, usize)> = lists
            .into_iter()
            .map(|(mut v, id)| {
                v.sort_unstable();
                (v.into_iter().map(f64::from).collect(), id)
            })
            .collect();
        let cmp = |a: &(Vec<f64>, usize), b: &(Vec<f64>, usize)| tie_order(&a.0, a.1, &b.0, b.1);
        for a in &items {
            prop_assert_eq!(cmp(a, a), Ordering::Equal);
            for b in &items {
                prop_assert_eq!(cmp(a, b), cmp(b, a).reverse());
                if a.1 != b.1 {
                    prop_assert_ne!(cmp(a, b), Ordering::Equal);
                }
                for c in &items {
                    if cmp(a, b) != Ordering::Greater && cmp(b, c) != Ordering::Greater {
                        prop_assert_ne!(cmp(a, c), Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn break_ties_picks_the_least(n in 1usize..=3, seed: u64, steps in prop::collection::vec(any::<u64>(), 1..40)) {
        let problem = scrambled_problem(n, seed, 2).unwrap();
        let state = grow(&problem, Aggregation::Midpoint, steps).unwrap();
        let ids: Vec<_> = state.live_rects().map(|r| r.id()).collect();
        let winner = break_ties(&state, &ids).unwrap();
        let w = state.rect(winner).unwrap();
        for rect in state.live_rects() {
            prop_assert_ne!(
                tie_order(w.ranked_fvals(), w.id(), rect.ranked_fvals(), rect.id()),
                Ordering::Greater
            );
        }
        let mut reversed = ids.clone();
        reversed.reverse();
        prop_assert_eq!(break_ties(&state, &reversed).unwrap(), winner);
    }
}

/// Random `(delta, F)` tables: deltas strictly decreasing and exactly those
/// of balanced rectangles, values small integers with some `+inf`.
fn group_table() -> impl Strategy<Value = (Vec<(f64, f64)>, f64)> {
    (1usize..=6, prop::collection::vec((1u16..4, prop::option::weighted(0.9, -20i32..40)), 1..50)).prop_map(
        |(n, rows)| {
            let mut total = 0u32;
            let table: Vec<(f64, f64)> = rows
                .into_iter()
                .map(|(step, f)| {
                    total += u32::from(step);
                    let depth: Vec<u16> = (0..n)
                        .map(|j| ((total as usize + n - 1 - j) / n) as u16)
                        .collect();
                    (measure_from_depths(&depth), f.map_or(f64::INFINITY, f64::from))
                })
                .collect();
            let f_min = table
                .iter()
                .map(|g| g.1)
                .fold(f64::INFINITY, f64::min);
            (table, if f_min.is_finite() { f_min } else { 0.0 })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn lipschitz_matches_pairwise_check((table, f_min) in group_table(), eps in prop::sample::select(vec![0.0, 1e-4, 1e-2, 0.5])) {
        prop_assert_eq!(lipschitz_select(&table, f_min, eps), lipschitz_reference(&table, f_min, eps));
    }

    #[test]
    fn lipschitz_is_affine_invariant((table, f_min) in group_table(), scale in -4i32..=4, shift in -50i32..50) {
        let base = lipschitz_select(&table, f_min, 0.0);
        let factor = 2f64.powi(scale);
        let moved: Vec<(f64, f64)> = table.iter().map(|&(d, f)| (d * factor, f + f64::from(shift))).collect();
        prop_assert_eq!(lipschitz_select(&moved, f_min + f64::from(shift), 0.0), base);
    }

    #[test]
    fn smaller_eps_selects_a_superset((table, f_min) in group_table()) {
        let loose = lipschitz_select(&table, f_min, 0.0);
        for i in lipschitz_select(&table, f_min, 1e-4) {
            prop_assert!(loose.contains(&i));
        }
    }
}

#[test]
fn extend_after_refresh_keeps_the_cache_consistent() {
    let problem = scrambled_problem(2, 11, 4).unwrap();
    let mut state = grow(&problem, Aggregation::Mean, 0..50u64).unwrap();
    state.refresh_nearest();
    extend(&mut state, &problem, (0..50u64).map(|u| u * 7 + 1)).unwrap();
    state.check_invariants().unwrap();
}
