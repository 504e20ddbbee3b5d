//! Parallel execution of (problem, variant, rho) runs.

use std::cmp::Ordering;
use std::time::Instant;

use halrect::problems::perturb;
use halrect::{run, Problem};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::{BenchError, Result};
use crate::variant::Variant;

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub problem: String,
    pub n: usize,
    pub variant: Variant,
    pub rho: f64,
    pub solved: bool,
    pub m: usize,
    pub pe: f64,
    pub k: usize,
    pub seconds: f64,
}

impl SweepRecord {
    /// Canonical output order: problem, dimension, variant, rho.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.problem
            .cmp(&other.problem)
            .then(self.n.cmp(&other.n))
            .then_with(|| self.variant.to_string().cmp(&other.variant.to_string()))
            .then(self.rho.total_cmp(&other.rho))
    }
}

/// A run that could not be carried out.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub problem: String,
    pub n: usize,
    pub variant: Variant,
    pub rho: f64,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    /// One record per job in canonical order, including failed jobs
    /// (reported unsolved with `m = 0` and `pe = NaN`).
    pub records: Vec<SweepRecord>,
    pub failures: Vec<SweepFailure>,
}

/// Worker count from `HALRECT_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("HALRECT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

struct Job<'a> {
    problem: &'a Problem,
    variant: Variant,
    rho: f64,
}

fn run_job(job: &Job<'_>, cfg: &SweepConfig) -> (SweepRecord, Option<SweepFailure>) {
    let start = Instant::now();
    let outcome = if job.rho == 0.0 {
        Ok(job.problem.clone())
    } else {
        perturb(job.problem, job.rho)
    }
    .and_then(|p| run(&p, &cfg.solver_config(job.variant)));
    let seconds = if cfg.record_time {
        start.elapsed().as_secs_f64()
    } else {
        0.0
    };
    let mut record = SweepRecord {
        problem: job.problem.name.clone(),
        n: job.problem.dim(),
        variant: job.variant,
        rho: job.rho,
        solved: false,
        m: 0,
        pe: f64::NAN,
        k: 0,
        seconds,
    };
    match outcome {
        Ok(r) => {
            record.solved = r.pe <= cfg.eps_pe;
            record.m = r.m;
            record.pe = r.pe;
            record.k = r.k;
            (record, None)
        }
        Err(e) => {
            let failure = SweepFailure {
                problem: record.problem.clone(),
                n: record.n,
                variant: record.variant,
                rho: record.rho,
                message: e.to_string(),
            };
            (record, Some(failure))
        }
    }
}

/// Runs every (problem, variant, rho) combination of the configuration.
/// Individual run failures are recorded and do not stop the sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    let problems = cfg.select_problems()?;
    run_sweep_on(cfg, &problems)
}

/// As [`run_sweep`], over an explicit problem list.
pub fn run_sweep_on(cfg: &SweepConfig, problems: &[Problem]) -> Result<SweepOutcome> {
    if cfg.variants.is_empty() || problems.is_empty() {
        return Err(BenchError::Empty("sweep needs at least one variant and one problem".into()));
    }
    let jobs: Vec<Job<'_>> = problems
        .iter()
        .flat_map(|p| {
            cfg.variants.iter().flat_map(move |&v| {
                cfg.rho.iter().map(move |&rho| Job {
                    problem: p,
                    variant: v,
                    rho,
                })
            })
        })
        .collect();

    let work = || -> Vec<(SweepRecord, Option<SweepFailure>)> {
        jobs.par_iter().map(|job| run_job(job, cfg)).collect()
    };
    let results = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| BenchError::Empty(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut outcome = SweepOutcome::default();
    for (record, failure) in results {
        outcome.records.push(record);
        outcome.failures.extend(failure);
    }
    outcome.records.sort_by(SweepRecord::canonical_cmp);
    Ok(outcome)
}
