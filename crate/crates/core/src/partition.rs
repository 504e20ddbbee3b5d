//! Bisection of a hyper-rectangle along one of its longest sides, placement
//! of the two new sample points and inheritance of representative sets.

use crate::error::{Error, Result};
use crate::model::{pow2_neg, HyperRect, PartitionState, PointId, PointStore, Problem, RectId, MAX_DEPTH};

/// Corners and depths of one half of a bisected rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxBounds {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub depth: Vec<u16>,
}

impl BoxBounds {
    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }
}

/// Chooses the coordinate to bisect (0-based).
///
/// Among the longest sides (smallest depth), picks those where the midpoint
/// is farthest from `c_min`, and returns the smallest such index.
pub fn select_branching_coordinate(rect: &HyperRect, store: &PointStore, c_min: &[f64]) -> usize {
    let depth = rect.depth();
    let shallowest = depth.iter().copied().min().unwrap_or(0);
    let mid = store.point(rect.mid_id());
    let mut best: Option<(usize, f64)> = None;
    for (j, &d) in depth.iter().enumerate() {
        if d != shallowest {
            continue;
        }
        let gap = (mid[j] - c_min[j]).abs();
        if best.is_none_or(|(_, g)| gap > g) {
            best = Some((j, gap));
        }
    }
    best.map_or(0, |(j, _)| j)
}

fn check_branch(rect: &HyperRect, br: usize) -> Result<()> {
    let depth = rect.depth();
    if br >= depth.len() {
        return Err(Error::InvalidArgument(format!(
            "branching coordinate {br} out of range for n = {}",
            depth.len()
        )));
    }
    let shallowest = depth.iter().copied().min().unwrap_or(0);
    if depth[br] != shallowest {
        return Err(Error::InvalidArgument(format!(
            "coordinate {br} is not a longest side of rectangle {}",
            rect.id()
        )));
    }
    if depth[br] >= MAX_DEPTH {
        return Err(Error::Internal(format!(
            "rectangle {} is at the resolution floor",
            rect.id()
        )));
    }
    Ok(())
}

/// Splits `rect` at the midplane of coordinate `br` into (low, high) halves.
pub fn bisect(rect: &HyperRect, store: &PointStore, br: usize) -> Result<(BoxBounds, BoxBounds)> {
    check_branch(rect, br)?;
    let lo = rect.lo(store);
    let hi = rect.hi(store);
    let mut depth = rect.depth().to_vec();
    depth[br] += 1;
    let plane = store.point(rect.mid_id())[br];

    let mut left = BoxBounds {
        lo: lo.clone(),
        hi: hi.clone(),
        depth: depth.clone(),
    };
    left.hi[br] = plane;
    let mut right = BoxBounds { lo, hi, depth };
    right.lo[br] = plane;
    Ok((left, right))
}

/// Midpoints of the two halves: the parent midpoint shifted by a quarter
/// of the parent side along `br`, low child first.
pub fn child_midpoints(rect: &HyperRect, store: &PointStore, br: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_branch(rect, br)?;
    let offset = pow2_neg(rect.depth()[br] as u32 + 2);
    let mid = store.point(rect.mid_id());
    let mut left = mid.to_vec();
    let mut right = mid.to_vec();
    left[br] -= offset;
    right[br] += offset;
    Ok((left, right))
}

/// Splits the parent's representative set between the two children.
///
/// The left child keeps every point with coordinate `br` not above the
/// parent midpoint, the right child every point not below it, and each
/// child adds its own midpoint. Comparisons are exact.
pub fn inherit_rep_sets(
    parent: &HyperRect,
    br: usize,
    store: &PointStore,
    left_mid_id: PointId,
    right_mid_id: PointId,
) -> (Vec<PointId>, Vec<PointId>) {
    let plane = store.point(parent.mid_id())[br];
    let mut left = vec![left_mid_id];
    let mut right = vec![right_mid_id];
    for &h in parent.rep_set() {
        let x = store.point(h)[br];
        if plane >= x {
            left.push(h);
        }
        if plane <= x {
            right.push(h);
        }
    }
    left.sort_unstable();
    right.sort_unstable();
    (left, right)
}

/// Replaces live rectangle `rect_id` by its two halves, sampling both new
/// midpoints (low child first). `c_min` is the incumbent snapshot used for
/// the branching choice. Returns the new rectangle ids.
pub fn apply_subdivision(
    state: &mut PartitionState,
    rect_id: RectId,
    problem: &Problem,
    c_min: &[f64],
) -> Result<(RectId, RectId)> {
    let parent = state
        .rect(rect_id)
        .ok_or_else(|| Error::Internal(format!("selected rectangle {rect_id} is not live")))?;
    let br = select_branching_coordinate(parent, state.store(), c_min);
    let (c_left, c_right) = child_midpoints(parent, state.store(), br)?;
    let mut depth = parent.depth().to_vec();
    depth[br] += 1;

    let parent = state.remove_rect(rect_id)?;
    let (left_id, _) = state.evaluate(problem, &c_left)?;
    let (right_id, _) = state.evaluate(problem, &c_right)?;
    let (h_left, h_right) = inherit_rep_sets(&parent, br, state.store(), left_id, right_id);

    let left = HyperRect::new(depth.clone(), left_id, h_left, state.store());
    let right = HyperRect::new(depth, right_id, h_right, state.store());
    state.insert_rect(left);
    state.insert_rect(right);
    Ok((left_id, right_id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Aggregation;

    fn store_with(points: &[[f64; 2]]) -> PointStore {
        let mut s = PointStore::new(2);
        for p in points {
            s.push(p, 0.0);
        }
        s
    }

    #[test]
    fn single_longest_side_wins() {
        // [1/2,1] x [0,1]
        let store = store_with(&[[0.75, 0.5]]);
        let rect = HyperRect::new(vec![1, 0], 1, vec![1], &store);
        assert_eq!(select_branching_coordinate(&rect, &store, &[0.0, 0.0]), 1);
        assert_eq!(select_branching_coordinate(&rect, &store, &[0.75, 0.5]), 1);
    }

    #[test]
    fn ties_resolve_to_smallest_index() {
        let store = store_with(&[[0.25, 0.25]]);
        let rect = HyperRect::new(vec![1, 1], 1, vec![1], &store);
        assert_eq!(select_branching_coordinate(&rect, &store, &[0.25, 0.25]), 0);
        let unit = store_with(&[[0.5, 0.5]]);
        let root = HyperRect::new(vec![0, 0], 1, vec![1], &unit);
        assert_eq!(select_branching_coordinate(&root, &unit, &[0.5, 0.5]), 0);
    }

    #[test]
    fn farthest_coordinate_from_incumbent_wins() {
        let store = store_with(&[[0.25, 0.25]]);
        let rect = HyperRect::new(vec![1, 1], 1, vec![1], &store);
        assert_eq!(select_branching_coordinate(&rect, &store, &[0.25, 0.9]), 1);
        assert_eq!(select_branching_coordinate(&rect, &store, &[0.9, 0.25]), 0);
    }

    #[test]
    fn bisect_unit_square() {
        let store = store_with(&[[0.5, 0.5]]);
        let root = HyperRect::new(vec![0, 0], 1, vec![1], &store);
        let (l, r) = bisect(&root, &store, 0).unwrap();
        assert_eq!((l.lo.as_slice(), l.hi.as_slice()), (&[0.0, 0.0][..], &[0.5, 1.0][..]));
        assert_eq!((r.lo.as_slice(), r.hi.as_slice()), (&[0.5, 0.0][..], &[1.0, 1.0][..]));
        assert_eq!(l.depth, vec![1, 0]);
        assert_eq!(l.volume() + r.volume(), root.volume());
    }

    #[test]
    fn bisect_quarter_square() {
        let store = store_with(&[[0.25, 0.25]]);
        let rect = HyperRect::new(vec![1, 1], 1, vec![1], &store);
        let (l, r) = bisect(&rect, &store, 0).unwrap();
        assert_eq!((l.lo, l.hi), (vec![0.0, 0.0], vec![0.25, 0.5]));
        assert_eq!((r.lo, r.hi), (vec![0.25, 0.0], vec![0.5, 0.5]));
    }

    #[test]
    fn bisect_rejects_bad_coordinates() {
        let store = store_with(&[[0.75, 0.5]]);
        let rect = HyperRect::new(vec![1, 0], 1, vec![1], &store);
        assert!(matches!(bisect(&rect, &store, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(bisect(&rect, &store, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn child_midpoint_examples() {
        let cases = [
            ([0.5, 0.5], vec![0, 0], 0, [0.25, 0.5], [0.75, 0.5]),
            ([0.75, 0.5], vec![1, 0], 1, [0.75, 0.25], [0.75, 0.75]),
            ([0.25, 0.25], vec![1, 1], 0, [0.125, 0.25], [0.375, 0.25]),
        ];
        for (mid, depth, br, el, er) in cases {
            let store = store_with(&[mid]);
            let rect = HyperRect::new(depth, 1, vec![1], &store);
            let (l, r) = child_midpoints(&rect, &store, br).unwrap();
            assert_eq!(l, el);
            assert_eq!(r, er);
        }
    }

    #[test]
    fn rep_set_inheritance_example() {
        // ids: 1=(1/2,1/2) 2=(1/4,1/2) 3=(3/4,1/2) 4=(1/4,1/4) ... 8=(1/8,1/4) 9=(3/8,1/4)
        let store = store_with(&[
            [0.5, 0.5],
            [0.25, 0.5],
            [0.75, 0.5],
            [0.25, 0.25],
            [0.25, 0.75],
            [0.75, 0.25],
            [0.75, 0.75],
            [0.125, 0.25],
            [0.375, 0.25],
        ]);
        let parent = HyperRect::new(vec![1, 1], 4, vec![1, 2, 4], &store);
        let (l, r) = inherit_rep_sets(&parent, 0, &store, 8, 9);
        assert_eq!(l, vec![2, 4, 8]);
        assert_eq!(r, vec![1, 2, 4, 9]);
    }

    #[test]
    fn root_inheritance_keeps_parent_midpoint_in_both() {
        let store = store_with(&[[0.5, 0.5], [0.25, 0.5], [0.75, 0.5]]);
        let root = HyperRect::new(vec![0, 0], 1, vec![1], &store);
        let (l, r) = inherit_rep_sets(&root, 0, &store, 2, 3);
        assert_eq!(l, vec![1, 2]);
        assert_eq!(r, vec![1, 3]);
    }

    #[test]
    fn subdivision_replaces_parent() {
        let p = Problem::new("bukin6", vec![-15.0, -3.0], vec![5.0, 3.0], 0.0, |x: &[f64]| {
            100.0 * (x[1] - 0.01 * x[0] * x[0]).abs().sqrt() + 0.01 * (x[0] + 10.0).abs()
        })
        .unwrap();
        let mut s = PartitionState::empty(2, Aggregation::Midpoint);
        s.evaluate(&p, &[0.5, 0.5]).unwrap();
        s.insert_rect(HyperRect::new(vec![0, 0], 1, vec![1], s.store()));
        let c_min = s.c_min().to_vec();
        let (l, r) = apply_subdivision(&mut s, 1, &p, &c_min).unwrap();
        assert_eq!((l, r), (2, 3));
        assert_eq!(s.m(), 3);
        assert!((s.store().fval(2) - 100.0).abs() < 1e-9);
        assert!((s.store().fval(3) - 0.10).abs() < 1e-9);
        assert_eq!(s.live_count(), 2);
        assert_eq!(s.group_count(), 1);
        assert!(s.rect(1).is_none());
        s.check_invariants().unwrap();
        assert!(matches!(
            apply_subdivision(&mut s, 1, &p, &c_min),
            Err(Error::Internal(_))
        ));
    }
}
