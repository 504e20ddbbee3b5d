use halrect_bench::io::{read_oc, read_results, write_oc, write_results};
use halrect_bench::report::{budget_grid, catalog_tags, operational_characteristics, summarize, Subset};
use halrect_bench::{SweepRecord, Variant};
use proptest::prelude::*;

fn record() -> impl Strategy<Value = SweepRecord> {
    (
        prop::sample::select(vec!["Branin", "Sphere", "Ackley", "Shekel5", "Not in catalog", "Odd, \"quoted\""]),
        1usize..12,
        prop::sample::select(Variant::all()),
        prop::sample::select(vec![0.0, 0.025, 0.05]),
        any::<bool>(),
        0usize..2_000_000,
        prop_oneof![any::<f64>(), Just(f64::NAN), 0.0f64..1e3],
        0usize..100_000,
        0.0f64..100.0,
    )
        .prop_map(|(problem, n, variant, rho, solved, m, pe, k, seconds)| SweepRecord {
            problem: problem.to_string(),
            n,
            variant,
            rho,
            solved,
            m,
            pe,
            k,
            seconds,
        })
}

fn same_bits(a: &SweepRecord, b: &SweepRecord) -> bool {
    a.problem == b.problem
        && a.n == b.n
        && a.variant == b.variant
        && a.rho.to_bits() == b.rho.to_bits()
        && a.solved == b.solved
        && a.m == b.m
        && (a.pe.to_bits() == b.pe.to_bits() || (a.pe.is_nan() && b.pe.is_nan()))
        && a.k == b.k
        && a.seconds.to_bits() == b.seconds.to_bits()
}

proptest! {
    #[test]
    fn results_round_trip_exactly(records in prop::collection::vec(record(), 0..40)) {
        let mut buf = Vec::new();
        write_results(&mut buf, &records).unwrap();
        let back = read_results(&buf[..]).unwrap();
        prop_assert_eq!(back.len(), records.len());
        for (a, b) in records.iter().zip(&back) {
            prop_assert!(same_bits(a, b), "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn curves_are_monotone_and_bounded(records in prop::collection::vec(record(), 1..60)) {
        let grid = budget_grid();
        let points = operational_characteristics(&records, &grid).unwrap();
        for curve in points.chunk_by(|a, b| a.variant == b.variant) {
            prop_assert_eq!(curve.len(), grid.len());
            for w in curve.windows(2) {
                prop_assert!(w[0].proportion <= w[1].proportion);
            }
            for p in curve {
                prop_assert!((0.0..=1.0).contains(&p.proportion));
            }
        }
        let mut buf = Vec::new();
        write_oc(&mut buf, &points).unwrap();
        prop_assert_eq!(read_oc(&buf[..]).unwrap(), points);
    }

    #[test]
    fn summary_counts_match_records(records in prop::collection::vec(record(), 1..60)) {
        let rows = summarize(&records, 1_000_000, catalog_tags);
        for row in &rows {
            let members: Vec<&SweepRecord> = records
                .iter()
                .filter(|r| r.variant == row.variant && row.subset.matches(r.n, catalog_tags(&r.problem)))
                .collect();
            prop_assert_eq!(row.runs, members.len());
            prop_assert_eq!(row.failures, members.iter().filter(|r| !r.solved).count());
            prop_assert!(row.median_m <= 1_000_000.0 || members.iter().any(|r| r.solved && r.m > 1_000_000));
            if row.subset == Subset::All {
                let total: usize = members.iter().map(|r| if r.solved { r.m } else { 1_000_000 }).sum();
                prop_assert!((row.mean_m - total as f64 / members.len() as f64).abs() <= 1e-6 * row.mean_m.max(1.0));
            }
        }
    }
}
