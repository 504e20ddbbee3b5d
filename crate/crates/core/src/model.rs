//! Shared data model: problems, sampled points, hyper-rectangles, the live
//! partition and solver configuration.
//!
//! All geometry lives in the unit cube `[0, 1]^n`. A rectangle never stores
//! its corners; it stores one bisection depth per dimension, so every side
//! length is an exact power of two and every sampled coordinate is a dyadic
//! rational that `f64` represents without rounding (see [`MAX_DEPTH`]).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::selection::tie_order;

/// 1-based index of a sampled point in insertion order.
pub type PointId = usize;

/// Identifier of a hyper-rectangle. A rectangle is named after the point
/// sampled at its midpoint, so ids are unique over a run and never reused.
pub type RectId = PointId;

/// Largest per-dimension bisection depth.
///
/// A midpoint at depth `d` is an odd multiple of `2^-(d+1)`, which needs
/// `d + 1` significant bits. Depth 52 is the deepest level at which every
/// midpoint and corner is still exact in `f64`. A rectangle whose every
/// side has reached this depth is at the resolution floor and is never
/// offered for selection.
pub const MAX_DEPTH: u16 = 52;

/// `2^-k` computed exactly.
pub(crate) fn pow2_neg(k: u32) -> f64 {
    debug_assert!(k < 1023);
    f64::from_bits(((1023 - k) as u64) << 52)
}

/// Euclidean diagonal of a rectangle with the given bisection depths:
/// `sqrt(sum_j 4^-depth[j])`.
pub fn measure_from_depths(depth: &[u16]) -> f64 {
    depth
        .iter()
        .map(|&d| pow2_neg(2 * d as u32))
        .sum::<f64>()
        .sqrt()
}

/// How the objective values sampled inside a rectangle are summarized
/// for selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Aggregation {
    /// Value at the midpoint (`13a`).
    Midpoint,
    /// Minimum over the representative set (`13b`).
    Minimum,
    /// Arithmetic mean over the representative set (`13c`).
    Mean,
    /// Average of the midpoint value and the minimum (`13d`).
    MidMinAverage,
}

impl Aggregation {
    pub const ALL: [Aggregation; 4] = [
        Aggregation::Midpoint,
        Aggregation::Minimum,
        Aggregation::Mean,
        Aggregation::MidMinAverage,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Aggregation::Midpoint => "13a",
            Aggregation::Minimum => "13b",
            Aggregation::Mean => "13c",
            Aggregation::MidMinAverage => "13d",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "13a" | "a" | "midpoint" => Ok(Aggregation::Midpoint),
            "13b" | "b" | "min" | "minimum" => Ok(Aggregation::Minimum),
            "13c" | "c" | "mean" => Ok(Aggregation::Mean),
            "13d" | "d" | "midmin" => Ok(Aggregation::MidMinAverage),
            other => Err(Error::InvalidArgument(format!(
                "unknown aggregation `{other}` (expected 13a, 13b, 13c or 13d)"
            ))),
        }
    }
}

/// Rule used to pick the rectangles subdivided in an iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SelectionScheme {
    /// Lower-right convex hull of (measure, aggregated value) with the
    /// sufficient-decrease condition.
    Lipschitz,
    /// Best rectangle of every measure group above a size floor.
    ImprovedAggressive,
    /// Union of two Pareto staircases: (size, value) and (size, distance
    /// to the incumbent).
    ParetoGl,
}

impl SelectionScheme {
    pub const ALL: [SelectionScheme; 3] = [
        SelectionScheme::Lipschitz,
        SelectionScheme::ImprovedAggressive,
        SelectionScheme::ParetoGl,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SelectionScheme::Lipschitz => "lipschitz",
            SelectionScheme::ImprovedAggressive => "ia",
            SelectionScheme::ParetoGl => "gl",
        }
    }
}

impl fmt::Display for SelectionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SelectionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lipschitz" | "l" | "halrect" => Ok(SelectionScheme::Lipschitz),
            "ia" | "improved-aggressive" => Ok(SelectionScheme::ImprovedAggressive),
            "gl" | "pareto" | "pareto-gl" => Ok(SelectionScheme::ParetoGl),
            other => Err(Error::InvalidArgument(format!(
                "unknown selection `{other}` (expected lipschitz, ia or gl)"
            ))),
        }
    }
}

/// Objective signature: original-space point to value.
pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A box-constrained minimization problem with known optimum metadata.
#[derive(Clone)]
pub struct Problem {
    pub name: String,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub f_star: f64,
    pub x_star: Option<Vec<f64>>,
    pub convex: bool,
    pub multimodal: bool,
    objective: Objective,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("n", &self.dim())
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("f_star", &self.f_star)
            .field("x_star", &self.x_star)
            .finish_non_exhaustive()
    }
}

impl Problem {
    pub fn new<F>(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        f_star: f64,
        objective: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidArgument(format!(
                "`{name}`: bounds have lengths {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "`{name}`: bound {j} is [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self {
            name,
            lower,
            upper,
            f_star,
            x_star: None,
            convex: false,
            multimodal: true,
            objective: Arc::new(objective),
        })
    }

    /// Attaches a known global minimizer; it must lie inside the box.
    pub fn with_optimum(mut self, x_star: Vec<f64>) -> Result<Self> {
        if x_star.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "`{}`: minimizer has {} coordinates, expected {}",
                self.name,
                x_star.len(),
                self.dim()
            )));
        }
        let inside = x_star
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (lo, hi))| lo <= x && x <= hi);
        if !inside {
            return Err(Error::InvalidArgument(format!(
                "`{}`: minimizer lies outside the domain",
                self.name
            )));
        }
        self.x_star = Some(x_star);
        Ok(self)
    }

    pub fn with_tags(mut self, convex: bool, multimodal: bool) -> Self {
        self.convex = convex;
        self.multimodal = multimodal;
        self
    }

    pub(crate) fn with_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Raw objective value at an original-space point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    /// `"convex,uni-modal"` style tag string.
    pub fn tags(&self) -> String {
        format!(
            "{},{}",
            if self.convex { "convex" } else { "non-convex" },
            if self.multimodal { "multi-modal" } else { "uni-modal" }
        )
    }

    pub fn to_original(&self, c: &[f64]) -> Result<Vec<f64>> {
        to_original(c, self)
    }
}

/// Maps a unit-cube point to the problem's original domain,
/// `x[j] = (upper[j] - lower[j]) * c[j] + lower[j]`.
pub fn to_original(c: &[f64], problem: &Problem) -> Result<Vec<f64>> {
    if c.len() != problem.dim() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, problem `{}` has n = {}",
            c.len(),
            problem.name,
            problem.dim()
        )));
    }
    Ok(c.iter()
        .zip(problem.lower.iter().zip(&problem.upper))
        .map(|(&cj, (&lo, &hi))| (hi - lo) * cj + lo)
        .collect())
}

/// Append-only registry of sampled unit-space points and their values.
#[derive(Debug, Clone)]
pub struct PointStore {
    n: usize,
    coords: Vec<f64>,
    fvals: Vec<f64>,
}

impl PointStore {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            coords: Vec::new(),
            fvals: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.fvals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fvals.is_empty()
    }

    /// Appends a point and returns its id.
    pub fn push(&mut self, c: &[f64], f: f64) -> PointId {
        debug_assert_eq!(c.len(), self.n);
        self.coords.extend_from_slice(c);
        self.fvals.push(f);
        self.fvals.len()
    }

    /// Coordinates of point `id`.
    ///
    /// # Panics
    ///
    /// Panics if `id` is 0 or past the end of the store.
    pub fn point(&self, id: PointId) -> &[f64] {
        let start = (id - 1) * self.n;
        &self.coords[start..start + self.n]
    }

    pub fn fval(&self, id: PointId) -> f64 {
        self.fvals[id - 1]
    }

    pub fn fvals(&self) -> &[f64] {
        &self.fvals
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointId, &[f64], f64)> + '_ {
        self.coords
            .chunks_exact(self.n)
            .zip(&self.fvals)
            .enumerate()
            .map(|(i, (c, &f))| (i + 1, c, f))
    }
}

/// Measure-group key: the rectangle's depth vector sorted ascending.
///
/// Bisection always cuts a longest side, so depths of one rectangle differ
/// by at most one. Under that invariant the key is determined by the total
/// depth, and ordering keys by total depth orders groups by strictly
/// decreasing measure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupKey(Box<[u16]>);

impl GroupKey {
    pub fn from_depths(depth: &[u16]) -> Self {
        let mut sorted = depth.to_vec();
        sorted.sort_unstable();
        GroupKey(sorted.into_boxed_slice())
    }

    pub fn depths(&self) -> &[u16] {
        &self.0
    }

    pub fn total_depth(&self) -> u32 {
        self.0.iter().map(|&d| d as u32).sum()
    }

    pub fn measure(&self) -> f64 {
        measure_from_depths(&self.0)
    }

    /// Every side is at [`MAX_DEPTH`]; the rectangle cannot be bisected.
    pub fn is_atomic(&self) -> bool {
        self.0.first().is_some_and(|&d| d >= MAX_DEPTH)
    }
}

impl Ord for GroupKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_depth()
            .cmp(&other.total_depth())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GroupKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All four aggregations of a representative set, in `13a..13d` order.
pub fn aggregate_values(mid_f: f64, fvals: &[f64]) -> [f64; 4] {
    let min = fvals.iter().copied().fold(mid_f, f64::min);
    let mean = fvals.iter().sum::<f64>() / fvals.len() as f64;
    [mid_f, min, mean, 0.5 * (min + mid_f)]
}

/// A live rectangle of the partition.
#[derive(Debug, Clone)]
pub struct HyperRect {
    depth: Box<[u16]>,
    mid_id: PointId,
    rep_set: Box<[PointId]>,
    measure: f64,
    agg: [f64; 4],
    ranked_fvals: Arc<[f64]>,
}

impl HyperRect {
    /// Builds a rectangle and caches its measure and aggregations.
    /// `rep_set` must contain `mid_id`; it is stored sorted and deduplicated.
    pub fn new(
        depth: Vec<u16>,
        mid_id: PointId,
        mut rep_set: Vec<PointId>,
        store: &PointStore,
    ) -> Self {
        rep_set.sort_unstable();
        rep_set.dedup();
        debug_assert!(rep_set.binary_search(&mid_id).is_ok());
        let fvals: Vec<f64> = rep_set.iter().map(|&id| store.fval(id)).collect();
        let agg = aggregate_values(store.fval(mid_id), &fvals);
        let mut ranked = fvals;
        ranked.sort_unstable_by(f64::total_cmp);
        Self {
            measure: measure_from_depths(&depth),
            depth: depth.into_boxed_slice(),
            mid_id,
            rep_set: rep_set.into_boxed_slice(),
            agg,
            ranked_fvals: ranked.into(),
        }
    }

    pub fn id(&self) -> RectId {
        self.mid_id
    }

    pub fn mid_id(&self) -> PointId {
        self.mid_id
    }

    pub fn depth(&self) -> &[u16] {
        &self.depth
    }

    pub fn dim(&self) -> usize {
        self.depth.len()
    }

    pub fn rep_set(&self) -> &[PointId] {
        &self.rep_set
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn aggregate(&self, variant: Aggregation) -> f64 {
        self.agg[variant.slot()]
    }

    pub fn aggregates(&self) -> [f64; 4] {
        self.agg
    }

    /// Representative-set values sorted ascending (tie-break order).
    pub fn ranked_fvals(&self) -> &[f64] {
        &self.ranked_fvals
    }

    pub fn side(&self, j: usize) -> f64 {
        pow2_neg(self.depth[j] as u32)
    }

    pub fn volume(&self) -> f64 {
        pow2_neg(self.depth.iter().map(|&d| d as u32).sum())
    }

    pub fn group_key(&self) -> GroupKey {
        GroupKey::from_depths(&self.depth)
    }

    pub fn lo(&self, store: &PointStore) -> Vec<f64> {
        let c = store.point(self.mid_id);
        c.iter()
            .zip(self.depth.iter())
            .map(|(&cj, &d)| cj - pow2_neg(d as u32 + 1))
            .collect()
    }

    pub fn hi(&self, store: &PointStore) -> Vec<f64> {
        let c = store.point(self.mid_id);
        c.iter()
            .zip(self.depth.iter())
            .map(|(&cj, &d)| cj + pow2_neg(d as u32 + 1))
            .collect()
    }

    /// Whether point `c` lies in the closed box.
    pub fn contains(&self, store: &PointStore, c: &[f64]) -> bool {
        let mid = store.point(self.mid_id);
        mid.iter()
            .zip(self.depth.iter())
            .zip(c)
            .all(|((&m, &d), &x)| {
                let half = pow2_neg(d as u32 + 1);
                m - half <= x && x <= m + half
            })
    }

    pub(crate) fn rank_key(&self, aggregation: Aggregation) -> RankKey {
        RankKey {
            value: self.aggregate(aggregation),
            fvals: Arc::clone(&self.ranked_fvals),
            id: self.mid_id,
        }
    }
}

/// Ordering handle of a rectangle inside its measure group: aggregated value
/// first, then the sorted-values tie-break.
#[derive(Debug, Clone)]
pub struct RankKey {
    value: f64,
    fvals: Arc<[f64]>,
    id: RectId,
}

impl RankKey {
    pub fn id(&self) -> RectId {
        self.id
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn ranked_fvals(&self) -> &[f64] {
        &self.fvals
    }
}

impl PartialEq for RankKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for RankKey {}

impl Ord for RankKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| tie_order(&self.fvals, self.id, &other.fvals, other.id))
    }
}

impl PartialOrd for RankKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rectangles sharing one measure, ranked by aggregated value.
#[derive(Debug, Clone)]
pub struct MeasureGroup {
    delta: f64,
    ranked: BTreeSet<RankKey>,
    nearest: Option<Nearest>,
}

/// Member of a group whose midpoint is closest to the incumbent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nearest {
    pub dist2: f64,
    pub id: RectId,
}

impl MeasureGroup {
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }

    /// Lowest aggregated value, ties resolved by the sorted-values rule.
    pub fn best(&self) -> &RankKey {
        self.ranked.first().expect("measure groups are never empty")
    }

    pub fn members(&self) -> impl Iterator<Item = &RankKey> + '_ {
        self.ranked.iter()
    }

    /// Cached closest member, valid while the incumbent is unchanged.
    pub fn nearest(&self) -> Option<Nearest> {
        self.nearest
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Whether candidate `(d, rect)` beats the current nearest `(cur, cur_rect)`.
fn closer(d: f64, rect: &HyperRect, cur: Nearest, cur_rect: &HyperRect) -> bool {
    match d.total_cmp(&cur.dist2) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            tie_order(rect.ranked_fvals(), rect.id(), cur_rect.ranked_fvals(), cur.id)
                == Ordering::Less
        }
    }
}

/// Solver parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub selection: SelectionScheme,
    pub aggregation: Aggregation,
    /// Sufficient-decrease parameter of the Lipschitz scheme.
    pub eps: f64,
    /// Percent-error tolerance that counts as solved.
    pub eps_pe: f64,
    /// Evaluation budget (checked at the top of each iteration).
    pub m_max: usize,
    /// Maximum number of iterations after initialization; `None` is unbounded.
    pub k_max: Option<usize>,
    /// Per-dimension depth of the smallest rectangle the improved
    /// aggressive scheme still selects (50 means "subdivided 50n times").
    pub delta_limit_multiplier: u16,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            selection: SelectionScheme::ParetoGl,
            aggregation: Aggregation::MidMinAverage,
            eps: 1e-4,
            eps_pe: 1e-2,
            m_max: 1_000_000,
            k_max: None,
            delta_limit_multiplier: 50,
        }
    }
}

impl SolverConfig {
    pub fn new(selection: SelectionScheme, aggregation: Aggregation) -> Self {
        Self {
            selection,
            aggregation,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) || !self.eps.is_finite() {
            return Err(Error::InvalidArgument(format!("eps must be > 0, got {}", self.eps)));
        }
        if !(self.eps_pe >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "eps_pe must be >= 0, got {}",
                self.eps_pe
            )));
        }
        if self.m_max < 1 {
            return Err(Error::InvalidArgument("m_max must be >= 1".into()));
        }
        if self.delta_limit_multiplier == 0 || self.delta_limit_multiplier > MAX_DEPTH {
            return Err(Error::InvalidArgument(format!(
                "delta_limit_multiplier must be in 1..={MAX_DEPTH}"
            )));
        }
        Ok(())
    }
}

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Solved,
    EvaluationBudget,
    IterationBudget,
    /// Every live rectangle is at the resolution floor.
    Exhausted,
}

/// Outcome of a full run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub f_min: f64,
    pub x_min: Vec<f64>,
    pub c_min: Vec<f64>,
    pub pe: f64,
    pub k: usize,
    pub m: usize,
    /// `(m, f_min)` at every strict improvement of the incumbent.
    pub history: Vec<(usize, f64)>,
    /// Evaluations whose value was non-finite and stored as `+inf`.
    pub nonfinite_evals: usize,
    pub stop: StopReason,
}

/// The live partition of the unit cube plus the point store and counters.
#[derive(Debug, Clone)]
pub struct PartitionState {
    n: usize,
    aggregation: Aggregation,
    store: PointStore,
    rects: Vec<Option<HyperRect>>,
    groups: BTreeMap<GroupKey, MeasureGroup>,
    live: usize,
    f_min: f64,
    min_id: PointId,
    pub(crate) k: usize,
    history: Vec<(usize, f64)>,
    nonfinite: usize,
    nearest_anchor: PointId,
}

impl PartitionState {
    /// Empty partition (no points, no rectangles).
    pub fn empty(n: usize, aggregation: Aggregation) -> Self {
        Self {
            n,
            aggregation,
            store: PointStore::new(n),
            rects: vec![None],
            groups: BTreeMap::new(),
            live: 0,
            f_min: f64::INFINITY,
            min_id: 0,
            k: 0,
            history: Vec::new(),
            nonfinite: 0,
            nearest_anchor: 0,
        }
    }

    /// Samples `c` (unit space), records the value and updates the incumbent.
    /// Ties with the incumbent move it to the newer point.
    pub fn evaluate(&mut self, problem: &Problem, c: &[f64]) -> Result<(PointId, f64)> {
        if c.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, partition has n = {}",
                c.len(),
                self.n
            )));
        }
        let x = to_original(c, problem)?;
        let mut f = problem.eval(&x);
        if !f.is_finite() {
            self.nonfinite += 1;
            f = f64::INFINITY;
        }
        let id = self.store.push(c, f);
        if f <= self.f_min {
            if f < self.f_min {
                self.history.push((id, f));
            }
            self.f_min = f;
            self.min_id = id;
        }
        self.rects.push(None);
        Ok((id, f))
    }

    /// Adds a rectangle to the live set and its measure group.
    pub fn insert_rect(&mut self, rect: HyperRect) {
        let id = rect.id();
        let key = rect.group_key();
        let rank = rect.rank_key(self.aggregation);
        let delta = rect.measure();
        let group = self.groups.entry(key).or_insert_with(|| MeasureGroup {
            delta,
            ranked: BTreeSet::new(),
            nearest: None,
        });
        let fresh = group.ranked.is_empty();
        group.ranked.insert(rank);
        if self.nearest_anchor != 0 && self.nearest_anchor == self.min_id {
            let d = squared_distance(self.store.point(id), self.store.point(self.min_id));
            group.nearest = match group.nearest {
                None if fresh => Some(Nearest { dist2: d, id }),
                Some(cur) => {
                    let cur_rect = self.rects[cur.id].as_ref().expect("nearest is live");
                    if closer(d, &rect, cur, cur_rect) {
                        Some(Nearest { dist2: d, id })
                    } else {
                        Some(cur)
                    }
                }
                None => None,
            };
        }
        debug_assert!(self.rects[id].is_none());
        self.rects[id] = Some(rect);
        self.live += 1;
    }

    /// Removes a live rectangle.
    pub fn remove_rect(&mut self, id: RectId) -> Result<HyperRect> {
        let rect = self
            .rects
            .get_mut(id)
            .and_then(Option::take)
            .ok_or_else(|| Error::Internal(format!("rectangle {id} is not live")))?;
        let key = rect.group_key();
        let group = self
            .groups
            .get_mut(&key)
            .ok_or_else(|| Error::Internal(format!("measure group of {id} missing")))?;
        if !group.ranked.remove(&rect.rank_key(self.aggregation)) {
            return Err(Error::Internal(format!("rectangle {id} missing from its group")));
        }
        if group.ranked.is_empty() {
            self.groups.remove(&key);
        } else if group.nearest.is_some_and(|c| c.id == id) {
            group.nearest = None;
        }
        self.live -= 1;
        Ok(rect)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn aggregation(&self) -> Aggregation {
        self.aggregation
    }

    pub fn store(&self) -> &PointStore {
        &self.store
    }

    pub fn rect(&self, id: RectId) -> Option<&HyperRect> {
        self.rects.get(id).and_then(Option::as_ref)
    }

    pub fn live_rects(&self) -> impl Iterator<Item = &HyperRect> + '_ {
        self.rects.iter().flatten()
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    /// Measure groups in order of decreasing measure.
    pub fn groups(&self) -> impl Iterator<Item = (&GroupKey, &MeasureGroup)> + '_ {
        self.groups.iter()
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Brings every group's nearest-to-incumbent cache up to date.
    pub fn refresh_nearest(&mut self) {
        if self.store.is_empty() {
            return;
        }
        let stale = self.nearest_anchor != self.min_id;
        self.nearest_anchor = self.min_id;
        let anchor = self.store.point(self.min_id);
        for group in self.groups.values_mut() {
            if !stale && group.nearest.is_some() {
                continue;
            }
            let mut best: Option<(Nearest, &HyperRect)> = None;
            for member in &group.ranked {
                let rect = self.rects[member.id].as_ref().expect("grouped rect is live");
                let d = squared_distance(self.store.point(member.id), anchor);
                let better = match best {
                    None => true,
                    Some((cur, cur_rect)) => closer(d, rect, cur, cur_rect),
                };
                if better {
                    best = Some((Nearest { dist2: d, id: member.id }, rect));
                }
            }
            group.nearest = best.map(|(n, _)| n);
        }
    }

    /// Whether group nearest caches refer to the current incumbent.
    pub fn nearest_is_current(&self) -> bool {
        self.nearest_anchor != 0 && self.nearest_anchor == self.min_id
    }

    /// Largest measure among live rectangles.
    pub fn max_measure(&self) -> Option<f64> {
        self.groups.values().next().map(MeasureGroup::delta)
    }

    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    pub fn min_id(&self) -> PointId {
        self.min_id
    }

    pub fn c_min(&self) -> &[f64] {
        self.store.point(self.min_id)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.store.len()
    }

    pub fn history(&self) -> &[(usize, f64)] {
        &self.history
    }

    pub fn nonfinite_evals(&self) -> usize {
        self.nonfinite
    }

    /// Checks every structural invariant of the partition. Intended for tests
    /// and debug runs; cost is linear in the number of live rectangles.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.n;
        let store = &self.store;
        if store.fvals().len() * n != store.coords.len() {
            return Err("point store columns out of sync".into());
        }
        let mut volume = 0.0;
        let mut counted = 0;
        for rect in self.live_rects() {
            counted += 1;
            let id = rect.id();
            let depth = rect.depth();
            let (dmin, dmax) = (
                *depth.iter().min().unwrap_or(&0),
                *depth.iter().max().unwrap_or(&0),
            );
            if dmax - dmin > 1 {
                return Err(format!("rect {id}: unbalanced depths {depth:?}"));
            }
            let lo = rect.lo(store);
            let hi = rect.hi(store);
            for j in 0..n {
                if hi[j] - lo[j] != rect.side(j) {
                    return Err(format!("rect {id}: side {j} is not 2^-depth"));
                }
                if lo[j] < 0.0 || hi[j] > 1.0 {
                    return Err(format!("rect {id}: leaves the unit cube"));
                }
            }
            let reps = rect.rep_set();
            if reps.binary_search(&rect.mid_id()).is_err() {
                return Err(format!("rect {id}: midpoint not in representative set"));
            }
            if reps.is_empty() || reps.len() > 2 * n + 1 {
                return Err(format!(
                    "rect {id}: representative set has {} points (bound {})",
                    reps.len(),
                    2 * n + 1
                ));
            }
            for &p in reps {
                if !rect.contains(store, store.point(p)) {
                    return Err(format!("rect {id}: point {p} outside the closed box"));
                }
            }
            let [a, b, c, d] = rect.aggregates();
            if !(b <= a) {
                return Err(format!("rect {id}: minimum {b} exceeds midpoint value {a}"));
            }
            if d != 0.5 * (a + b) {
                return Err(format!("rect {id}: 13d is not the midpoint/minimum average"));
            }
            if !(b <= c || c.is_nan()) {
                return Err(format!("rect {id}: mean {c} below minimum {b}"));
            }
            let key = rect.group_key();
            match self.groups.get(&key) {
                Some(g) if g.delta().to_bits() == rect.measure().to_bits() => {}
                _ => return Err(format!("rect {id}: group key and measure disagree")),
            }
            volume += rect.volume();
        }
        if counted != self.live {
            return Err(format!("live count {} but {} rects", self.live, counted));
        }
        let grouped: usize = self.groups.values().map(MeasureGroup::len).sum();
        if grouped != self.live {
            return Err(format!("groups hold {grouped} rects, {} live", self.live));
        }
        if self.live > 0 && (volume - 1.0).abs() > 1e-12 {
            return Err(format!("partition volume is {volume}"));
        }
        let mut prev: Option<f64> = None;
        for g in self.groups.values() {
            if let Some(p) = prev {
                if !(g.delta() < p) {
                    return Err("groups not strictly ordered by measure".into());
                }
            }
            prev = Some(g.delta());
        }
        if !store.is_empty() {
            let best = store.fvals().iter().copied().fold(f64::INFINITY, f64::min);
            if best != self.f_min || store.fval(self.min_id) != self.f_min {
                return Err("incumbent is not the store minimum".into());
            }
        }
        Ok(())
    }
}
