//! Benchmark harness for the `halrect` solver: sweep configuration,
//! parallel execution, operational characteristics and CSV reports.

pub mod config;
pub mod error;
pub mod io;
pub mod report;
pub mod sweep;
pub mod variant;

pub use config::{SweepConfig, Tag};
pub use error::{BenchError, Result};
pub use report::{budget_grid, operational_characteristics, summarize, OcPoint, Subset, SummaryRow};
pub use sweep::{run_sweep, run_sweep_on, SweepFailure, SweepOutcome, SweepRecord};
pub use variant::{parse_variant_list, Variant};
