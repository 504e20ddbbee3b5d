//! Halving-rectangles global optimization.
//!
//! The search box is normalized to the unit cube and partitioned by
//! repeated bisection. Every rectangle keeps the ids of the sampled points
//! on its boundary and at its centre, and selection can rank rectangles by
//! the midpoint value, the best sampled value, their mean, or the average
//! of midpoint and best.
//!
//! ```
//! use halrect::{problems, run, Aggregation, SelectionScheme, SolverConfig};
//!
//! let problem = problems::lookup("Branin", 2).unwrap();
//! let config = SolverConfig::new(SelectionScheme::ParetoGl, Aggregation::MidMinAverage);
//! let result = run(&problem, &config).unwrap();
//! assert!(result.pe <= 1e-2);
//! ```
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod partition;
pub mod problems;
pub mod reference;
pub mod selection;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    measure_from_depths, to_original, Aggregation, GroupKey, HyperRect, MeasureGroup,
    PartitionState, PointId, PointStore, Problem, RectId, RunResult, SelectionScheme,
    SolverConfig, StopReason, MAX_DEPTH,
};
pub use selection::{select, SelectionOutcome};
pub use solver::{init, iterate, percent_error, run, run_with, should_stop, Decision};
