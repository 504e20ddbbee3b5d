//! The optimization driver: initialization, the select/subdivide loop and
//! stopping rules.

use crate::error::{Error, Result};
use crate::model::{
    HyperRect, PartitionState, Problem, RunResult, SelectionScheme, SolverConfig, StopReason,
};
use crate::partition::apply_subdivision;
use crate::selection::{group_reps, select, SelectionOutcome};

/// Percent error of `f` against the known optimum `f_star`.
pub fn percent_error(f: f64, f_star: f64) -> f64 {
    if f_star == 0.0 {
        100.0 * f
    } else {
        100.0 * (f - f_star) / f_star.abs()
    }
}

/// Verdict of [`should_stop`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Continue,
    Stop(StopReason),
}

/// Samples the centre of the unit cube and returns the one-rectangle
/// partition (`k = 1`, `m = 1`).
pub fn init(problem: &Problem, config: &SolverConfig) -> Result<PartitionState> {
    config.validate()?;
    let n = problem.dim();
    let mut state = PartitionState::empty(n, config.aggregation);
    let centre = vec![0.5; n];
    let (id, f) = state.evaluate(problem, &centre)?;
    if !f.is_finite() {
        let value = problem.eval(&problem.to_original(&centre)?);
        return Err(Error::ObjectiveFailure { value });
    }
    let root = HyperRect::new(vec![0; n], id, vec![id], state.store());
    state.insert_rect(root);
    state.k = 1;
    Ok(state)
}

/// Loop-top stopping test. `k_max` bounds the number of completed
/// iterations after initialization.
pub fn should_stop(state: &PartitionState, config: &SolverConfig, problem: &Problem) -> Decision {
    if percent_error(state.f_min(), problem.f_star) <= config.eps_pe {
        return Decision::Stop(StopReason::Solved);
    }
    if state.m() >= config.m_max {
        return Decision::Stop(StopReason::EvaluationBudget);
    }
    if config.k_max.is_some_and(|k_max| state.k() > k_max) {
        return Decision::Stop(StopReason::IterationBudget);
    }
    if group_reps(state).is_empty() {
        return Decision::Stop(StopReason::Exhausted);
    }
    Decision::Continue
}

/// Whether `outcome` subdivides a rectangle of the largest selectable measure.
pub fn selects_largest_group(state: &PartitionState, outcome: &SelectionOutcome) -> bool {
    let Some(top) = state.groups().find(|(key, _)| !key.is_atomic()).map(|(k, _)| k.clone()) else {
        return false;
    };
    outcome
        .selected
        .iter()
        .filter_map(|&id| state.rect(id))
        .any(|r| r.group_key() == top)
}

/// One pass of the main loop: select, then subdivide every selected
/// rectangle using the incumbent as it stood after selection.
pub fn iterate(
    state: &mut PartitionState,
    problem: &Problem,
    config: &SolverConfig,
) -> Result<SelectionOutcome> {
    step(state, problem, config, &mut |_, _| {})
}

fn step(
    state: &mut PartitionState,
    problem: &Problem,
    config: &SolverConfig,
    observe: &mut dyn FnMut(&PartitionState, &SelectionOutcome),
) -> Result<SelectionOutcome> {
    if config.selection == SelectionScheme::ParetoGl {
        state.refresh_nearest();
    }
    let outcome = select(state, config)?;
    observe(state, &outcome);
    if outcome.selected.is_empty() {
        return Err(Error::Internal("selection returned no rectangles".into()));
    }
    debug_assert!(selects_largest_group(state, &outcome));
    let c_min = state.c_min().to_vec();
    for &id in &outcome.selected {
        apply_subdivision(state, id, problem, &c_min)?;
    }
    state.k += 1;
    Ok(outcome)
}

/// Runs to completion.
pub fn run(problem: &Problem, config: &SolverConfig) -> Result<RunResult> {
    run_with(problem, config, |_, _| {})
}

/// Runs to completion, calling `observe` with the state as it was at
/// selection time and the selection made, once per iteration.
pub fn run_with<F>(problem: &Problem, config: &SolverConfig, mut observe: F) -> Result<RunResult>
where
    F: FnMut(&PartitionState, &SelectionOutcome),
{
    let mut state = init(problem, config)?;
    let stop = loop {
        if let Decision::Stop(reason) = should_stop(&state, config, problem) {
            break reason;
        }
        step(&mut state, problem, config, &mut observe)?;
    };
    finish(&state, problem, stop)
}

/// Assembles the result for a state.
pub fn finish(state: &PartitionState, problem: &Problem, stop: StopReason) -> Result<RunResult> {
    let c_min = state.c_min().to_vec();
    Ok(RunResult {
        f_min: state.f_min(),
        x_min: problem.to_original(&c_min)?,
        c_min,
        pe: percent_error(state.f_min(), problem.f_star),
        k: state.k(),
        m: state.m(),
        history: state.history().to_vec(),
        nonfinite_evals: state.nonfinite_evals(),
        stop,
    })
}
