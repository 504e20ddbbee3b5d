//! Identification of potentially optimal hyper-rectangles.
//!
//! All three schemes work on one representative per measure group, so the
//! cost of a selection is proportional to the number of distinct measures
//! rather than the number of live rectangles.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{
    aggregate_values, Aggregation, GroupKey, HyperRect, PartitionState, PointStore, RectId,
    SelectionScheme, SolverConfig,
};

/// Representative of one measure group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRep {
    pub key: GroupKey,
    pub delta: f64,
    pub best_rect_id: RectId,
    pub best_f: f64,
}

/// Rectangles chosen for subdivision in one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionOutcome {
    /// Ordered by decreasing measure, no duplicates.
    pub selected: Vec<RectId>,
    pub scheme: SelectionScheme,
    /// `(delta, best_F)` of every selectable group, by decreasing measure.
    pub groups: Vec<(f64, f64)>,
}

/// Recomputes one aggregation of `rect` from the point store.
pub fn aggregate(rect: &HyperRect, store: &PointStore, variant: Aggregation) -> f64 {
    let fvals: Vec<f64> = rect.rep_set().iter().map(|&id| store.fval(id)).collect();
    let all = aggregate_values(store.fval(rect.mid_id()), &fvals);
    all[Aggregation::ALL.iter().position(|&a| a == variant).unwrap_or(0)]
}

/// Duplicate-reduction order between two rectangles: compare the ascending
/// sorted representative values lexicographically, a strict prefix beats
/// the longer list, and the smaller id breaks exact ties.
pub fn tie_order(a_fvals: &[f64], a_id: RectId, b_fvals: &[f64], b_id: RectId) -> Ordering {
    for (x, y) in a_fvals.iter().zip(b_fvals) {
        match x.total_cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a_fvals
        .len()
        .cmp(&b_fvals.len())
        .then_with(|| a_id.cmp(&b_id))
}

/// The candidate that wins the duplicate-reduction order.
pub fn break_ties(state: &PartitionState, candidates: &[RectId]) -> Result<RectId> {
    let mut best: Option<&HyperRect> = None;
    for &id in candidates {
        let rect = state
            .rect(id)
            .ok_or_else(|| Error::InvalidArgument(format!("rectangle {id} is not live")))?;
        best = match best {
            Some(b) if tie_order(b.ranked_fvals(), b.id(), rect.ranked_fvals(), id) != Ordering::Greater => {
                Some(b)
            }
            _ => Some(rect),
        };
    }
    best.map(HyperRect::id)
        .ok_or_else(|| Error::InvalidArgument("no candidates".into()))
}

/// Representatives of every group that can still be bisected, by
/// decreasing measure.
pub fn group_reps(state: &PartitionState) -> Vec<GroupRep> {
    state
        .groups()
        .filter(|(key, _)| !key.is_atomic())
        .map(|(key, group)| {
            let best = group.best();
            GroupRep {
                key: key.clone(),
                delta: group.delta(),
                best_rect_id: best.id(),
                best_f: best.value(),
            }
        })
        .collect()
}

fn slope(a: (f64, f64), b: (f64, f64)) -> f64 {
    (b.1 - a.1) / (b.0 - a.0)
}

/// Lower-right convex hull of `(delta, F)` points given in increasing
/// `delta` order with distinct deltas. Starts at the lowest `F` (largest
/// `delta` on ties) and runs to the last point; collinear points are kept.
/// Turns are decided by comparing slopes, the same quantities the rate
/// condition is stated in, so exactly collinear triples stay collinear.
/// Returns indices into `points`.
pub fn lipschitz_hull(points: &[(f64, f64)]) -> Vec<usize> {
    let Some(start) = (0..points.len()).min_by(|&i, &j| {
        points[i]
            .1
            .total_cmp(&points[j].1)
            .then_with(|| j.cmp(&i))
    }) else {
        return Vec::new();
    };
    let mut hull: Vec<usize> = Vec::new();
    for i in start..points.len() {
        while hull.len() >= 2 {
            let a = points[hull[hull.len() - 2]];
            let b = points[hull[hull.len() - 1]];
            if slope(a, b) > slope(b, points[i]) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

/// Indices kept by a strict Pareto staircase over values listed in the
/// preferred order of the other criterion: the first entry is kept, and
/// after that an entry is kept only if it improves on every earlier one.
pub fn pareto_staircase(values: &[f64]) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut floor = f64::INFINITY;
    for (i, &v) in values.iter().enumerate() {
        if i == 0 || v < floor {
            kept.push(i);
            floor = floor.min(v);
        }
    }
    kept
}

fn outcome(scheme: SelectionScheme, reps: &[GroupRep], selected: Vec<RectId>) -> SelectionOutcome {
    SelectionOutcome {
        selected,
        scheme,
        groups: reps.iter().map(|g| (g.delta, g.best_f)).collect(),
    }
}

fn nonempty_reps(state: &PartitionState) -> Result<Vec<GroupRep>> {
    let reps = group_reps(state);
    if reps.is_empty() {
        return Err(Error::InvalidState(if state.live_count() == 0 {
            "partition is empty".into()
        } else {
            "every rectangle is at the resolution floor".into()
        }));
    }
    Ok(reps)
}

/// Lipschitz-type selection on a table of `(delta, F)` pairs listed by
/// strictly decreasing `delta`, one per measure group. Returns the chosen
/// indices in table order. The first (largest) entry is always chosen;
/// other entries need finite `F`, a place on the lower-right convex hull,
/// and `F - L*delta <= f_min - eps*|f_min|` for the slope `L` to the next
/// hull vertex.
pub fn lipschitz_select(groups: &[(f64, f64)], f_min: f64, eps: f64) -> Vec<usize> {
    if groups.is_empty() {
        return Vec::new();
    }
    // increasing delta, finite values only
    let ascending: Vec<usize> = (0..groups.len()).rev().filter(|&i| groups[i].1.is_finite()).collect();
    let points: Vec<(f64, f64)> = ascending.iter().map(|&i| groups[i]).collect();
    let hull = lipschitz_hull(&points);

    let threshold = f_min - eps * f_min.abs();
    let mut picked: Vec<usize> = Vec::with_capacity(hull.len() + 1);
    for (pos, &h) in hull.iter().enumerate() {
        let (delta, f) = points[h];
        let neighbour = match hull.get(pos + 1) {
            Some(&r) => Some(points[r]),
            None if ascending[h] != 0 => Some(groups[0]),
            None => None,
        };
        let keep = match neighbour {
            None => true,
            Some(next) => f - slope((delta, f), next) * delta <= threshold,
        };
        if keep {
            picked.push(ascending[h]);
        }
    }
    if picked.last() != Some(&0) {
        picked.push(0);
    }
    picked.reverse();
    picked
}

/// Lipschitz-type selection over the partition's measure groups.
pub fn poh_lipschitz(state: &PartitionState, eps: f64) -> Result<SelectionOutcome> {
    let reps = nonempty_reps(state)?;
    let table: Vec<(f64, f64)> = reps.iter().map(|g| (g.delta, g.best_f)).collect();
    let selected = lipschitz_select(&table, state.f_min(), eps)
        .into_iter()
        .map(|i| reps[i].best_rect_id)
        .collect();
    Ok(outcome(SelectionScheme::Lipschitz, &reps, selected))
}

/// Measure of a rectangle bisected `multiplier` times along every side:
/// `sqrt(n) * 2^-multiplier`.
pub fn delta_limit(n: usize, multiplier: u16) -> f64 {
    (n as f64).sqrt() * crate::model::pow2_neg(multiplier as u32)
}

/// Improved aggressive selection: the best rectangle of every group whose
/// measure is at least `limit`. The largest group is always included.
pub fn poh_aggressive(state: &PartitionState, limit: f64) -> Result<SelectionOutcome> {
    let reps = nonempty_reps(state)?;
    let selected = reps
        .iter()
        .enumerate()
        .filter(|(i, g)| *i == 0 || g.delta >= limit)
        .map(|(_, g)| g.best_rect_id)
        .collect();
    Ok(outcome(SelectionScheme::ImprovedAggressive, &reps, selected))
}

/// Global-local Pareto selection: the union of the staircase on
/// (measure, aggregated value) and the staircase on (measure, midpoint
/// distance to the incumbent).
pub fn poh_pareto_gl(state: &PartitionState) -> Result<SelectionOutcome> {
    let reps = nonempty_reps(state)?;
    let values: Vec<f64> = reps.iter().map(|g| g.best_f).collect();
    let by_value = pareto_staircase(&values);

    let anchor = state.c_min();
    let store = state.store();
    let selectable = state.groups().filter(|(key, _)| !key.is_atomic());
    let mut nearest: Vec<(f64, RectId)> = Vec::with_capacity(reps.len());
    for (_, group) in selectable {
        let cached = if state.nearest_is_current() { group.nearest() } else { None };
        let pick = match cached {
            Some(c) => (c.dist2, c.id),
            None => {
                let mut best: Option<(f64, &HyperRect)> = None;
                for member in group.members() {
                    let rect = state.rect(member.id()).expect("grouped rect is live");
                    let d: f64 = store
                        .point(member.id())
                        .iter()
                        .zip(anchor)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum();
                    let better = match best {
                        None => true,
                        Some((bd, b)) => match d.total_cmp(&bd) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => {
                                tie_order(rect.ranked_fvals(), rect.id(), b.ranked_fvals(), b.id())
                                    == Ordering::Less
                            }
                        },
                    };
                    if better {
                        best = Some((d, rect));
                    }
                }
                let (d, rect) = best.expect("groups are never empty");
                (d, rect.id())
            }
        };
        nearest.push(pick);
    }
    let distances: Vec<f64> = nearest.iter().map(|&(d, _)| d).collect();
    let by_distance = pareto_staircase(&distances);

    let mut selected = Vec::with_capacity(by_value.len() + by_distance.len());
    let (mut a, mut b) = (by_value.iter().peekable(), by_distance.iter().peekable());
    loop {
        let next = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(&&i), None) => {
                a.next();
                (i, reps[i].best_rect_id)
            }
            (None, Some(&&j)) => {
                b.next();
                (j, nearest[j].1)
            }
            (Some(&&i), Some(&&j)) => {
                if i <= j {
                    a.next();
                    (i, reps[i].best_rect_id)
                } else {
                    b.next();
                    (j, nearest[j].1)
                }
            }
        };
        if !selected.contains(&next.1) {
            selected.push(next.1);
        }
    }
    Ok(outcome(SelectionScheme::ParetoGl, &reps, selected))
}

/// Runs the scheme named in `config`.
pub fn select(state: &PartitionState, config: &SolverConfig) -> Result<SelectionOutcome> {
    match config.selection {
        SelectionScheme::Lipschitz => poh_lipschitz(state, config.eps),
        SelectionScheme::ImprovedAggressive => poh_aggressive(
            state,
            delta_limit(state.dim(), config.delta_limit_multiplier),
        ),
        SelectionScheme::ParetoGl => poh_pareto_gl(state),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_order_examples() {
        assert_eq!(tie_order(&[1.0, 5.0], 1, &[1.0, 4.0], 2), Ordering::Greater);
        assert_eq!(tie_order(&[1.0, 3.0, 7.0], 1, &[1.0, 3.0], 2), Ordering::Greater);
        assert_eq!(tie_order(&[2.0], 3, &[2.0], 7), Ordering::Less);
        assert_eq!(tie_order(&[2.0], 7, &[2.0], 7), Ordering::Equal);
    }

    #[test]
    fn delta_limit_examples() {
        assert_eq!(delta_limit(1, 50), 2f64.powi(-50));
        assert_eq!(delta_limit(4, 50), 2f64.powi(-49));
        assert_eq!(delta_limit(2, 50), 2f64.sqrt() * 2f64.powi(-50));
        // balanced depth-50 rectangle sits exactly on the limit
        for n in 1..=20 {
            let d = crate::model::measure_from_depths(&vec![50; n]);
            assert_eq!(d, delta_limit(n, 50));
        }
    }

    #[test]
    fn hull_drops_points_above_the_minorant() {
        let pts = [(1.0, 0.0), (2.0, 5.0), (3.0, 1.0), (4.0, 2.0)];
        assert_eq!(lipschitz_hull(&pts), vec![0, 2, 3]);
        let pts = [(1.0, 3.0), (2.0, 1.0), (3.0, 1.0)];
        assert_eq!(lipschitz_hull(&pts), vec![2]);
        let collinear = [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)];
        assert_eq!(lipschitz_hull(&collinear), vec![0, 1, 2]);
    }

    #[test]
    fn lipschitz_select_examples() {
        let groups = [(4.0, 2.0), (3.0, 1.0), (2.0, 5.0), (1.0, 0.0)];
        assert_eq!(lipschitz_select(&groups, 0.0, 0.0), vec![0, 1, 3]);
        assert_eq!(lipschitz_select(&groups, -1.0, 1e-4), vec![0, 1]);
        let infinite_top = [(4.0, f64::INFINITY), (2.0, 7.0), (1.0, 0.0)];
        assert_eq!(lipschitz_select(&infinite_top, 0.0, 1e-4), vec![0, 1, 2]);
        assert!(lipschitz_select(&[], 0.0, 0.0).is_empty());
    }

    #[test]
    fn staircase_is_strict() {
        assert_eq!(pareto_staircase(&[3.0, 3.0, 2.0, 2.5, 1.0]), vec![0, 2, 4]);
        assert_eq!(pareto_staircase(&[1.0, 2.0, 3.0]), vec![0]);
        assert!(pareto_staircase(&[]).is_empty());
    }
}
