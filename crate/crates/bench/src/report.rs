//! Operational characteristics and summary tables.

use std::collections::BTreeMap;
use std::fmt;

use halrect::problems;

use crate::error::{BenchError, Result};
use crate::sweep::SweepRecord;
use crate::variant::Variant;

/// Budgets `10^(1 + i/25)` for `i = 0..=125`: 25 log-spaced points per
/// decade from 10 to 10^6.
pub fn budget_grid() -> Vec<f64> {
    (0..=125).map(|i| 10f64.powf(1.0 + i as f64 / 25.0)).collect()
}

/// One point of an operational-characteristic curve.
#[derive(Debug, Clone, PartialEq)]
pub struct OcPoint {
    pub variant: Variant,
    pub budget: f64,
    pub proportion: f64,
}

/// For every variant and budget `B`, the fraction of that variant's runs
/// that were solved with at most `B` evaluations.
pub fn operational_characteristics(records: &[SweepRecord], grid: &[f64]) -> Result<Vec<OcPoint>> {
    if records.is_empty() {
        return Err(BenchError::Empty("no records to build curves from".into()));
    }
    let mut by_variant: BTreeMap<Variant, Vec<&SweepRecord>> = BTreeMap::new();
    for r in records {
        by_variant.entry(r.variant).or_default().push(r);
    }
    let mut out = Vec::with_capacity(by_variant.len() * grid.len());
    for (variant, runs) in by_variant {
        let total = runs.len() as f64;
        for &budget in grid {
            let solved = runs.iter().filter(|r| r.solved && r.m as f64 <= budget).count();
            out.push(OcPoint {
                variant,
                budget,
                proportion: solved as f64 / total,
            });
        }
    }
    Ok(out)
}

/// Row subsets of the summary table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subset {
    All,
    SmallN,
    LargeN,
    Convex,
    NonConvex,
    UniModal,
    MultiModal,
}

impl Subset {
    pub const ALL: [Subset; 7] = [
        Subset::All,
        Subset::SmallN,
        Subset::LargeN,
        Subset::Convex,
        Subset::NonConvex,
        Subset::UniModal,
        Subset::MultiModal,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Subset::All => "all",
            Subset::SmallN => "n<=4",
            Subset::LargeN => "n>4",
            Subset::Convex => "convex",
            Subset::NonConvex => "non-convex",
            Subset::UniModal => "uni-modal",
            Subset::MultiModal => "multi-modal",
        }
    }

    pub fn matches(self, n: usize, tags: Option<(bool, bool)>) -> bool {
        match (self, tags) {
            (Subset::All, _) => true,
            (Subset::SmallN, _) => n <= 4,
            (Subset::LargeN, _) => n > 4,
            (_, None) => false,
            (Subset::Convex, Some((c, _))) => c,
            (Subset::NonConvex, Some((c, _))) => !c,
            (Subset::UniModal, Some((_, m))) => !m,
            (Subset::MultiModal, Some((_, m))) => m,
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub variant: Variant,
    pub subset: Subset,
    pub runs: usize,
    pub failures: usize,
    pub mean_m: f64,
    pub median_m: f64,
}

/// Catalog tags `(convex, multimodal)` of a family, if known.
pub fn catalog_tags(name: &str) -> Option<(bool, bool)> {
    problems::family(name).map(|f| (f.convex, f.multimodal))
}

fn median(sorted: &[f64]) -> f64 {
    let len = sorted.len();
    if len % 2 == 1 {
        sorted[len / 2]
    } else {
        0.5 * (sorted[len / 2 - 1] + sorted[len / 2])
    }
}

/// Failure count, mean and median evaluations per variant and subset.
/// Unsolved runs count as `budget` evaluations. Empty subsets are omitted.
pub fn summarize<T>(records: &[SweepRecord], budget: usize, tags: T) -> Vec<SummaryRow>
where
    T: Fn(&str) -> Option<(bool, bool)>,
{
    let variants: std::collections::BTreeSet<Variant> = records.iter().map(|r| r.variant).collect();
    let mut rows = Vec::new();
    for variant in variants {
        for subset in Subset::ALL {
            let mut evals: Vec<f64> = Vec::new();
            let mut failures = 0;
            for r in records
                .iter()
                .filter(|r| r.variant == variant && subset.matches(r.n, tags(&r.problem)))
            {
                if r.solved {
                    evals.push(r.m as f64);
                } else {
                    failures += 1;
                    evals.push(budget as f64);
                }
            }
            if evals.is_empty() {
                continue;
            }
            evals.sort_by(f64::total_cmp);
            rows.push(SummaryRow {
                variant,
                subset,
                runs: evals.len(),
                failures,
                mean_m: evals.iter().sum::<f64>() / evals.len() as f64,
                median_m: median(&evals),
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(problem: &str, n: usize, solved: bool, m: usize) -> SweepRecord {
        SweepRecord {
            problem: problem.into(),
            n,
            variant: "gl/13d".parse().unwrap(),
            rho: 0.0,
            solved,
            m,
            pe: if solved { 0.0 } else { 1.0 },
            k: 1,
            seconds: 0.0,
        }
    }

    #[test]
    fn grid_shape() {
        let g = budget_grid();
        assert_eq!(g.len(), 126);
        assert_eq!(g[0], 10.0);
        assert_eq!(g[25], 100.0);
        assert!((g[125] - 1e6).abs() < 1e-6);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn oc_examples() {
        let grid = budget_grid();
        let all = operational_characteristics(&[rec("Sphere", 2, true, 5)], &grid).unwrap();
        assert!(all.iter().all(|p| p.proportion == 1.0));
        let none = operational_characteristics(&[rec("Sphere", 2, false, 10)], &grid).unwrap();
        assert!(none.iter().all(|p| p.proportion == 0.0));
        let mixed = [rec("Sphere", 2, true, 100), rec("Branin", 2, false, 1_000_000)];
        let at = operational_characteristics(&mixed, &[1000.0]).unwrap();
        assert_eq!(at[0].proportion, 0.5);
        assert!(operational_characteristics(&[], &grid).is_err());
    }

    #[test]
    fn summary_examples() {
        let rows = summarize(&[rec("Sphere", 2, true, 500)], 1_000_000, catalog_tags);
        let all = &rows[0];
        assert_eq!((all.subset, all.runs, all.failures), (Subset::All, 1, 0));
        assert_eq!((all.mean_m, all.median_m), (500.0, 500.0));

        let recs = [
            rec("Sphere", 2, true, 200),
            rec("Branin", 2, true, 1000),
            rec("Ackley", 5, false, 1_000_003),
        ];
        let rows = summarize(&recs, 1_000_000, catalog_tags);
        let all = rows.iter().find(|r| r.subset == Subset::All).unwrap();
        assert_eq!(all.failures, 1);
        assert_eq!(all.median_m, 1000.0);
        assert!((all.mean_m - 1_001_200.0 / 3.0).abs() < 1e-9);
        let convex = rows.iter().find(|r| r.subset == Subset::Convex).unwrap();
        assert_eq!(convex.runs, 1);
        let large = rows.iter().find(|r| r.subset == Subset::LargeN).unwrap();
        assert_eq!((large.runs, large.failures), (1, 1));
    }
}
