//! Slow reference versions of the selection rules, plus helpers that grow
//! random partitions through real subdivisions. Used to cross-check the
//! fast paths; none of this is needed to run the solver.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;

use crate::error::Result;
use crate::model::{
    Aggregation, HyperRect, PartitionState, Problem, RectId, SelectionScheme, SolverConfig,
    MAX_DEPTH,
};
use crate::partition::apply_subdivision;
use crate::selection::tie_order;
use crate::solver::init;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A problem on the unit cube whose value at each point is a hash of the
/// point's bits, reduced to one of `levels` integers. Roughly one point in
/// `levels + 1` evaluates to `+inf` (never the centre). Few levels means many
/// exact ties.
pub fn scrambled_problem(n: usize, seed: u64, levels: u64) -> Result<Problem> {
    let levels = levels.max(1);
    Problem::new(
        format!("scrambled-{seed}"),
        vec![0.0; n],
        vec![1.0; n],
        0.0,
        move |x: &[f64]| {
            let h = x.iter().fold(splitmix(seed), |h, v| splitmix(h ^ v.to_bits()));
            let v = h % (levels + 1);
            if v == levels && x.iter().any(|&c| c != 0.5) {
                f64::INFINITY
            } else {
                (v % levels) as f64
            }
        },
    )
}

/// Starts a partition for `problem` and applies [`extend`] with `steps`.
pub fn grow<I>(problem: &Problem, aggregation: Aggregation, steps: I) -> Result<PartitionState>
where
    I: IntoIterator<Item = u64>,
{
    let config = SolverConfig::new(SelectionScheme::ParetoGl, aggregation);
    let mut state = init(problem, &config)?;
    extend(&mut state, problem, steps)?;
    Ok(state)
}

/// Applies one subdivision per entry of `steps`. An even step picks a live
/// rectangle uniformly by id; an odd step picks one of the four newest,
/// which drives some branches deep. Stops early if nothing can be bisected.
pub fn extend<I>(state: &mut PartitionState, problem: &Problem, steps: I) -> Result<()>
where
    I: IntoIterator<Item = u64>,
{
    for u in steps {
        let live: Vec<RectId> = state
            .live_rects()
            .filter(|r| !r.group_key().is_atomic())
            .map(HyperRect::id)
            .collect();
        if live.is_empty() {
            break;
        }
        let r = (u >> 1) as usize;
        let id = if u & 1 == 0 {
            live[r % live.len()]
        } else {
            live[live.len() - 1 - r % live.len().min(4)]
        };
        let c_min = state.c_min().to_vec();
        apply_subdivision(state, id, problem, &c_min)?;
    }
    Ok(())
}

/// One measure group as seen by a direct scan of the live rectangles.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupView {
    pub delta: f64,
    pub best: RectId,
    pub best_f: f64,
    pub nearest: RectId,
    pub dist2: f64,
}

fn aggregated(rect: &HyperRect, state: &PartitionState) -> (f64, Vec<f64>) {
    let store = state.store();
    let mut fvals: Vec<f64> = rect.rep_set().iter().map(|&h| store.fval(h)).collect();
    fvals.sort_by(f64::total_cmp);
    let mid = store.fval(rect.mid_id());
    let min = fvals[0];
    let f = match state.aggregation() {
        Aggregation::Midpoint => mid,
        Aggregation::Minimum => min,
        Aggregation::Mean => fvals.iter().sum::<f64>() / fvals.len() as f64,
        Aggregation::MidMinAverage => 0.5 * (mid + min),
    };
    (f, fvals)
}

/// Groups the bisectable live rectangles by bit-identical measure, largest
/// first, recomputing every value from the point store.
pub fn group_views(state: &PartitionState) -> Vec<GroupView> {
    let mut by_delta: BTreeMap<Reverse<u64>, Vec<&HyperRect>> = BTreeMap::new();
    for rect in state.live_rects() {
        if rect.depth().iter().all(|&d| d >= MAX_DEPTH) {
            continue;
        }
        by_delta.entry(Reverse(rect.measure().to_bits())).or_default().push(rect);
    }
    let anchor = state.c_min();
    by_delta
        .into_iter()
        .map(|(Reverse(bits), rects)| {
            let scored: Vec<(RectId, f64, Vec<f64>, f64)> = rects
                .iter()
                .map(|r| {
                    let (f, fvals) = aggregated(r, state);
                    let d2 = state
                        .store()
                        .point(r.mid_id())
                        .iter()
                        .zip(anchor)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    (r.id(), f, fvals, d2)
                })
                .collect();
            let best = scored
                .iter()
                .min_by(|a, b| a.1.total_cmp(&b.1).then_with(|| tie_order(&a.2, a.0, &b.2, b.0)))
                .expect("group is non-empty");
            let near = scored
                .iter()
                .min_by(|a, b| a.3.total_cmp(&b.3).then_with(|| tie_order(&a.2, a.0, &b.2, b.0)))
                .expect("group is non-empty");
            GroupView {
                delta: f64::from_bits(bits),
                best: best.0,
                best_f: best.1,
                nearest: near.0,
                dist2: near.3,
            }
        })
        .collect()
}

/// Direct check of the Lipschitz rule on `(delta, F)` pairs listed by
/// decreasing delta: entry `j` qualifies when some rate `L > 0` makes its
/// lower bound `F_j - L*delta_j` no larger than every other entry's and no
/// larger than `f_min - eps*|f_min|`. The first entry always qualifies.
/// Quadratic in the number of entries.
pub fn lipschitz_reference(groups: &[(f64, f64)], f_min: f64, eps: f64) -> Vec<usize> {
    let threshold = f_min - eps * f_min.abs();
    let mut out = Vec::new();
    for (j, &(dj, fj)) in groups.iter().enumerate() {
        if j == 0 {
            out.push(0);
            continue;
        }
        if !fj.is_finite() {
            continue;
        }
        let mut lo = 0.0f64;
        let mut hi = f64::INFINITY;
        for &(di, fi) in groups {
            match di.partial_cmp(&dj) {
                Some(Ordering::Less) if fi.is_finite() => lo = lo.max((fj - fi) / (dj - di)),
                Some(Ordering::Greater) => hi = hi.min((fi - fj) / (di - dj)),
                _ => {}
            }
        }
        if hi > 0.0 && lo <= hi && (hi.is_infinite() || fj - hi * dj <= threshold) {
            out.push(j);
        }
    }
    out
}

/// Direct check of the global-local rule: a group's best rectangle is kept
/// when every larger group has a strictly larger value, and its nearest
/// rectangle when every larger group is strictly farther from the
/// incumbent. Quadratic in the number of groups.
pub fn pareto_gl_reference(views: &[GroupView]) -> Vec<RectId> {
    let mut out = Vec::new();
    for (i, g) in views.iter().enumerate() {
        if views[..i].iter().all(|h| h.best_f > g.best_f) {
            out.push(g.best);
        }
        if views[..i].iter().all(|h| h.dist2 > g.dist2) && !out.contains(&g.nearest) {
            out.push(g.nearest);
        }
    }
    out
}

/// [`lipschitz_reference`] applied to a partition, as rectangle ids.
pub fn lipschitz_reference_ids(state: &PartitionState, eps: f64) -> Vec<RectId> {
    let views = group_views(state);
    let table: Vec<(f64, f64)> = views.iter().map(|g| (g.delta, g.best_f)).collect();
    lipschitz_reference(&table, state.f_min(), eps)
        .into_iter()
        .map(|i| views[i].best)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scrambled_is_deterministic_and_finite_at_centre() {
        let p = scrambled_problem(3, 7, 4).unwrap();
        assert_eq!(p.eval(&[0.25, 0.5, 0.75]), p.eval(&[0.25, 0.5, 0.75]));
        assert!(p.eval(&[0.5; 3]).is_finite());
        let values: std::collections::BTreeSet<u64> = (0..200)
            .map(|i| p.eval(&[i as f64 / 256.0, 0.5, 0.5]))
            .map(f64::to_bits)
            .collect();
        assert!(values.len() > 2);
    }

    #[test]
    fn grow_keeps_invariants() {
        let p = scrambled_problem(2, 1, 3).unwrap();
        let s = grow(&p, Aggregation::Mean, 0..100u64).unwrap();
        assert_eq!(s.m(), 201);
        s.check_invariants().unwrap();
    }

    #[test]
    fn reference_rules_on_small_tables() {
        let groups = [(4.0, 2.0), (3.0, 1.0), (2.0, 5.0), (1.0, 0.0)];
        assert_eq!(lipschitz_reference(&groups, 0.0, 0.0), vec![0, 1, 3]);
        assert_eq!(lipschitz_reference(&groups, -1.0, 1e-4), vec![0, 1]);
        let views = [
            GroupView { delta: 2.0, best: 1, best_f: 3.0, nearest: 1, dist2: 0.5 },
            GroupView { delta: 1.0, best: 2, best_f: 3.0, nearest: 4, dist2: 0.1 },
        ];
        assert_eq!(pareto_gl_reference(&views), vec![1, 4]);
    }
}
