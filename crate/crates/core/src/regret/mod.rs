//! Exact min-max regret by cut generation.
//!
//! The master problem picks `x` against a finite set of adversary selections;
//! the adversary's best reply to the master's `x` in its worst-case scenario
//! becomes the next cut. The loop stops once the master objective reaches the
//! true regret of its own solution.

mod cuts;
mod master;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use cuts::{cut_objective_coefficients, prune_cuts, Cut, CutSet, LinearForm};
pub use master::{solve_master, MasterOutcome, MasterSolution};

use crate::det::{RisDispatcher, RisSolver};
use crate::error::{Error, Result};
use crate::heuristics::{initialize_cuts, EvoParams};
use crate::model::{cost_of, evaluate_regret, midpoint_scenario, Instance, Selection};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Stop once `master objective >= regret(x_hat) - epsilon`.
    pub epsilon: f64,
    pub iteration_limit: usize,
    pub master_time_limit: Duration,
    /// Cuts dropped each time the master runs out of time.
    pub cut_prune_count: usize,
    /// Seeds scenario sampling for the initial cuts.
    pub rng_seed: u64,
    /// Seed the cut set by scenario sampling and the evolutionary search.
    /// When off, the only initial cut is the midpoint-scenario optimum.
    pub heuristics: bool,
    pub initial_scenarios: usize,
    pub evo: EvoParams,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            iteration_limit: 500,
            master_time_limit: Duration::from_secs(60),
            cut_prune_count: 3,
            rng_seed: 0,
            heuristics: true,
            initial_scenarios: 100,
            evo: EvoParams::default(),
        }
    }
}

impl SolverConfig {
    /// Sets the seed for scenario sampling and the evolutionary search.
    pub fn seeded(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self.evo.rng_seed = seed;
        self
    }

    pub fn check(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Params(format!("{what} must be positive")));
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Params("epsilon must be finite and nonnegative".into()));
        }
        if self.iteration_limit == 0 {
            return bad("iteration_limit");
        }
        if self.master_time_limit.is_zero() {
            return bad("master_time_limit");
        }
        if self.cut_prune_count == 0 {
            return bad("cut_prune_count");
        }
        if self.heuristics {
            if self.initial_scenarios == 0 {
                return bad("initial_scenarios");
            }
            self.evo.check()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RobustStatus {
    Optimal,
    IterationLimit,
    TimeLimit,
}

/// One completed master solve and the subproblem that followed it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub lower_bound: i64,
    pub upper_bound: i64,
    pub master_objective: i64,
    /// True regret of `x_hat`.
    pub regret: i64,
    /// Cut set size seen by the master.
    pub cuts: usize,
    /// Master attempts abandoned on the time limit before this solve.
    pub master_timeouts: usize,
    pub master_nodes: u64,
    pub master_time: f64,
    pub subproblem_time: f64,
    pub x_hat: Selection,
    pub z_hat: i64,
    /// The adversary reply added as a cut, absent on the final round.
    pub new_cut: Option<Selection>,
    /// `z_hat - c(x_hat)·new_cut`; positive for every added cut.
    pub cut_violation: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustResult {
    pub x_star: Selection,
    pub regret: i64,
    pub lower_bound: i64,
    pub upper_bound: i64,
    pub gap: f64,
    pub iterations: usize,
    pub status: RobustStatus,
    pub trace: Vec<IterationRecord>,
}

/// `(ub - lb) / ub`, or 0 when `ub` is 0.
pub fn relative_gap(lower_bound: i64, upper_bound: i64) -> f64 {
    if upper_bound == 0 {
        0.0
    } else {
        (upper_bound - lower_bound) as f64 / upper_bound as f64
    }
}

pub fn minmax_regret(instance: &Instance, config: &SolverConfig) -> Result<RobustResult> {
    minmax_regret_with(instance, config, |_| {})
}

/// Like [`minmax_regret`], calling `observer` after every completed round.
pub fn minmax_regret_with(
    instance: &Instance,
    config: &SolverConfig,
    mut observer: impl FnMut(&IterationRecord),
) -> Result<RobustResult> {
    config.check()?;
    let solver = RisDispatcher::for_instance(instance);

    let mut cuts = CutSet::new();
    let mut best: (Selection, i64);
    if config.heuristics {
        let init = initialize_cuts(instance, config.initial_scenarios, config.rng_seed, &config.evo, &solver)?;
        cuts = init.cuts;
        let (x, regret) = init.population.best().expect("population is never empty").clone();
        best = (x, regret);
    } else {
        let (x, _) = solver.solve(instance, &midpoint_scenario(instance))?.into_optimal().ok_or(Error::Infeasible)?;
        let regret = evaluate_regret(instance, &x, &solver)?.regret;
        cuts.insert(x.clone());
        best = (x, regret);
    }

    let mut lower_bound = 0;
    let mut trace = Vec::new();
    let mut previous: Option<Selection> = None;
    let mut timeouts = 0;

    let finish = |x_star: Selection, regret: i64, lower_bound: i64, iterations, status, trace| {
        let gap = if status == RobustStatus::Optimal { 0.0 } else { relative_gap(lower_bound, regret) };
        RobustResult { x_star, regret, lower_bound, upper_bound: regret, gap, iterations, status, trace }
    };

    while trace.len() < config.iteration_limit {
        let started = Instant::now();
        let seeds: Vec<&Selection> = previous.iter().chain(std::iter::once(&best.0)).collect();
        let outcome = master::solve_master_seeded(instance, &cuts, config.master_time_limit, &seeds)?;
        let master_time = started.elapsed().as_secs_f64();
        let (solution, nodes) = match outcome {
            MasterOutcome::Solved { solution, nodes } => (solution, nodes),
            MasterOutcome::TimeLimit { .. } => {
                if cuts.len() <= 1 {
                    let iterations = trace.len();
                    return Ok(finish(best.0, best.1, lower_bound, iterations, RobustStatus::TimeLimit, trace));
                }
                cuts = prune_cuts(&cuts, config.cut_prune_count);
                timeouts += 1;
                continue;
            }
        };
        let MasterSolution { x_hat, z_hat, objective } = solution.clone();
        // Dropping cuts can lower the master objective; the bound keeps the
        // best value seen.
        lower_bound = lower_bound.max(objective);
        cuts.update_slacks(instance, &x_hat, z_hat);

        let started = Instant::now();
        let report = evaluate_regret(instance, &x_hat, &solver)?;
        let subproblem_time = started.elapsed().as_secs_f64();
        assert!(objective <= report.regret, "master objective {objective} exceeds regret {}", report.regret);
        if report.regret < best.1 {
            best = (x_hat.clone(), report.regret);
        }

        let done = objective as f64 >= report.regret as f64 - config.epsilon;
        let (new_cut, cut_violation) = if done {
            (None, None)
        } else {
            let violation = z_hat - cost_of(instance, &report.scenario, &report.witness);
            assert!(violation > 0, "adversary reply does not cut off the master solution");
            (Some(report.witness.clone()), Some(violation))
        };
        let record = IterationRecord {
            iteration: trace.len() + 1,
            lower_bound,
            upper_bound: best.1,
            master_objective: objective,
            regret: report.regret,
            cuts: cuts.len(),
            master_timeouts: std::mem::take(&mut timeouts),
            master_nodes: nodes,
            master_time,
            subproblem_time,
            x_hat: x_hat.clone(),
            z_hat,
            new_cut: new_cut.clone(),
            cut_violation,
        };
        observer(&record);
        trace.push(record);

        if done {
            let iterations = trace.len();
            let result = finish(x_hat, report.regret, lower_bound.max(report.regret), iterations, RobustStatus::Optimal, trace);
            return Ok(result);
        }
        let added = cuts.insert(new_cut.expect("set when not done"));
        debug_assert!(added);
        previous = Some(x_hat);
    }
    let iterations = trace.len();
    Ok(finish(best.0, best.1, lower_bound, iterations, RobustStatus::IterationLimit, trace))
}
