//! Exact solver for the relaxed master problem: minimize, over feasible `x`,
//! the largest per-cut regret `max_y (c⁺·x − c(x)·y)` for `y` in the cut set.
//!
//! Depth-first branch-and-bound on item inclusion. Each node takes the larger
//! of two admissible bounds:
//!
//! * per cut, the fixed part plus the cheapest completion of every set under
//!   that cut's coefficients; the max over cuts bounds the max of the cuts;
//! * for a weight vector `λ` on the cut simplex, the cheapest completion under
//!   the `λ`-averaged coefficients. An average never exceeds the max, so this
//!   is a bound for every `λ`. The weights are tuned by exponentiated
//!   supergradient ascent, longer at the root and briefly at each node.
//!
//! Conflicts between free items are relaxed in both bounds.

use std::time::{Duration, Instant};

use super::{CutSet, SolverConfig};
use crate::det::search::SearchState;
use crate::error::{Error, Result};
use crate::model::{Instance, Selection};

const ROOT_STEPS: usize = 60;
const NODE_STEPS: usize = 4;
const BOUND_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterSolution {
    pub x_hat: Selection,
    /// `min_y c(x_hat)·y` over the cut set.
    pub z_hat: i64,
    /// `c⁺·x_hat − z_hat`, a lower bound on the optimal maximum regret.
    pub objective: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MasterOutcome {
    Solved { solution: MasterSolution, nodes: u64 },
    TimeLimit { nodes: u64 },
}

/// Solves the master problem over `cuts`. `incumbent`, when given, seeds the
/// upper bound.
pub fn solve_master(
    instance: &Instance,
    cuts: &CutSet,
    config: &SolverConfig,
    incumbent: Option<&Selection>,
) -> Result<MasterOutcome> {
    let seeds: Vec<&Selection> = incumbent.into_iter().collect();
    solve_master_seeded(instance, cuts, config.master_time_limit, &seeds)
}

pub(crate) fn solve_master_seeded(
    instance: &Instance,
    cuts: &CutSet,
    time_limit: Duration,
    seeds: &[&Selection],
) -> Result<MasterOutcome> {
    assert!(!cuts.is_empty(), "master problem needs at least one cut");
    let mut master = Master::new(instance, cuts, time_limit);
    for seed in seeds {
        let x = seed.flat_indices(instance);
        let value = master.objective(&x);
        if master.best.as_ref().is_none_or(|(_, b)| value < *b) {
            master.best = Some((x, value));
        }
    }
    let mut lambda = vec![1.0 / cuts.len() as f64; cuts.len()];
    master.dfs(&mut lambda, 0);
    let nodes = master.nodes;
    if master.timed_out {
        return Ok(MasterOutcome::TimeLimit { nodes });
    }
    let (x, objective) = master.best.take().ok_or(Error::Infeasible)?;
    let upper: i64 = x.iter().map(|&j| master.hi[j]).sum();
    let solution = MasterSolution { x_hat: Selection::from_flat(instance, x), z_hat: upper - objective, objective };
    Ok(MasterOutcome::Solved { solution, nodes })
}

struct Master<'a> {
    state: SearchState<'a>,
    hi: Vec<i64>,
    lo: Vec<i64>,
    width: Vec<i64>,
    cut_items: Vec<Vec<usize>>,
    base: Vec<i64>,
    cuts_with: Vec<Vec<usize>>,
    hi_order: Vec<Vec<usize>>,
    best: Option<(Vec<usize>, i64)>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
    // scratch
    mu: Vec<f64>,
    reduced: Vec<f64>,
    in_cut: Vec<bool>,
    in_relaxed: Vec<bool>,
}

impl<'a> Master<'a> {
    fn new(instance: &'a Instance, cuts: &CutSet, time_limit: Duration) -> Self {
        let n = instance.n_items();
        let hi: Vec<i64> = instance.intervals().iter().map(|iv| iv.hi).collect();
        let lo: Vec<i64> = instance.intervals().iter().map(|iv| iv.lo).collect();
        let width: Vec<i64> = instance.intervals().iter().map(|iv| iv.width()).collect();
        let cut_items: Vec<Vec<usize>> = cuts.iter().map(|y| y.flat_indices(instance)).collect();
        let base = cut_items.iter().map(|y| y.iter().map(|&j| lo[j]).sum()).collect();
        let mut cuts_with = vec![Vec::new(); n];
        for (c, items) in cut_items.iter().enumerate() {
            for &j in items {
                cuts_with[j].push(c);
            }
        }
        let hi_order = (0..instance.n_sets())
            .map(|s| {
                let mut items: Vec<usize> = instance.set_range(s).collect();
                items.sort_by_key(|&j| (hi[j], j));
                items
            })
            .collect();
        Self {
            state: SearchState::new(instance),
            hi,
            lo,
            width,
            cut_items,
            base,
            cuts_with,
            hi_order,
            best: None,
            deadline: Instant::now() + time_limit,
            nodes: 0,
            timed_out: false,
            mu: vec![0.0; n],
            reduced: vec![0.0; n],
            in_cut: vec![false; n],
            in_relaxed: vec![false; n],
        }
    }

    /// `max_y (c⁺·x − c(x)·y)` for a complete `x`.
    fn objective(&self, x: &[usize]) -> i64 {
        let mut alt = self.base.clone();
        for &j in x {
            for &c in &self.cuts_with[j] {
                alt[c] += self.width[j];
            }
        }
        let upper: i64 = x.iter().map(|&j| self.hi[j]).sum();
        upper - alt.into_iter().min().expect("nonempty cut set")
    }

    fn offer(&mut self, mut x: Vec<usize>) {
        let value = self.objective(&x);
        if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
            x.sort_unstable();
            self.best = Some((x, value));
        }
    }

    fn pruned(&self, bound: i64) -> bool {
        self.best.as_ref().is_some_and(|(_, b)| bound >= *b)
    }

    fn dfs(&mut self, lambda: &mut Vec<f64>, depth: usize) {
        let mark = self.state.mark();
        if self.state.propagate() {
            self.expand(lambda, depth);
        }
        self.state.undo(mark);
    }

    /// Value and minimizer of the `λ`-averaged relaxation at this node.
    fn lagrangian(&mut self, lambda: &[f64]) -> (f64, Vec<usize>) {
        let inst = self.state.instance();
        self.mu.iter_mut().for_each(|m| *m = 0.0);
        let mut shift = 0.0;
        for (c, items) in self.cut_items.iter().enumerate() {
            let l = lambda[c];
            shift += l * self.base[c] as f64;
            for &j in items {
                self.mu[j] += l;
            }
        }
        for j in 0..inst.n_items() {
            self.reduced[j] = self.hi[j] as f64 - self.width[j] as f64 * self.mu[j];
        }
        let mut value = -shift;
        let mut x = Vec::with_capacity(inst.total_quota());
        let mut free = Vec::new();
        for s in 0..inst.n_sets() {
            free.clear();
            for j in inst.set_range(s) {
                if self.state.is_in(j) {
                    value += self.reduced[j];
                    x.push(j);
                } else if self.state.is_free(j) {
                    free.push(j);
                }
            }
            let need = self.state.need(s);
            if need == 0 {
                continue;
            }
            let reduced = &self.reduced;
            let key = |&a: &usize, &b: &usize| reduced[a].total_cmp(&reduced[b]).then(a.cmp(&b));
            if need < free.len() {
                free.select_nth_unstable_by(need - 1, key);
            }
            for &j in &free[..need] {
                value += self.reduced[j];
                x.push(j);
            }
        }
        (value, x)
    }

    /// Moves `λ` along the supergradient `(ℓ_y(x))_y`. Returns `false` when the
    /// gradient is flat.
    fn ascend(&self, lambda: &mut [f64], x: &[usize], step: usize) -> bool {
        let upper: i64 = x.iter().map(|&j| self.hi[j]).sum();
        let mut grad: Vec<i64> = self.base.iter().map(|&b| upper - b).collect();
        for &j in x {
            for &c in &self.cuts_with[j] {
                grad[c] -= self.width[j];
            }
        }
        let top = *grad.iter().max().unwrap();
        let range = (top - *grad.iter().min().unwrap()) as f64;
        if range <= 0.0 {
            return false;
        }
        let eta = 2.0 / (range * ((step + 1) as f64).sqrt());
        let mut total = 0.0;
        for (l, &g) in lambda.iter_mut().zip(&grad) {
            *l = (*l * (eta * (g - top) as f64).exp()).max(1e-12);
            total += *l;
        }
        lambda.iter_mut().for_each(|l| *l /= total);
        true
    }

    /// Max over cuts of the cheapest completion under that cut's coefficients.
    fn per_cut_bound(&mut self) -> i64 {
        let inst = self.state.instance();
        let free_by_hi: Vec<Vec<usize>> = self
            .hi_order
            .iter()
            .map(|order| order.iter().copied().filter(|&j| self.state.is_free(j)).collect())
            .collect();
        let fixed_hi: i64 = (0..inst.n_items()).filter(|&j| self.state.is_in(j)).map(|j| self.hi[j]).sum();
        let mut best = i64::MIN;
        let mut vals = Vec::new();
        for c in 0..self.cut_items.len() {
            let items = &self.cut_items[c];
            let mut bound = fixed_hi - self.base[c];
            for &j in items {
                self.in_cut[j] = true;
                if self.state.is_in(j) {
                    bound -= self.width[j];
                }
            }
            for (s, free) in free_by_hi.iter().enumerate() {
                let need = self.state.need(s);
                if need == 0 {
                    continue;
                }
                vals.clear();
                vals.extend(
                    items
                        .iter()
                        .filter(|&&j| inst.set_of(j) == s && self.state.is_free(j))
                        .map(|&j| self.lo[j]),
                );
                vals.extend(free.iter().filter(|&&j| !self.in_cut[j]).take(need).map(|&j| self.hi[j]));
                vals.sort_unstable();
                bound += vals[..need].iter().sum::<i64>();
            }
            for &j in items {
                self.in_cut[j] = false;
            }
            best = best.max(bound);
        }
        best
    }

    fn expand(&mut self, lambda: &mut Vec<f64>, depth: usize) {
        self.nodes += 1;
        if self.timed_out || (self.nodes % 64 == 1 && Instant::now() >= self.deadline) {
            self.timed_out = true;
            return;
        }
        if self.state.is_complete() {
            let x = self.state.selected_items();
            self.offer(x);
            return;
        }

        let steps = if depth == 0 { ROOT_STEPS } else { NODE_STEPS };
        let mut relaxed = Vec::new();
        for step in 0..=steps {
            let (value, x) = self.lagrangian(lambda);
            if self.pruned((value - BOUND_TOLERANCE).ceil() as i64) {
                return;
            }
            relaxed = x;
            if step == steps || !self.ascend(lambda, &relaxed, step) {
                break;
            }
        }

        // The relaxed minimizer is a complete selection; keep it if it is
        // conflict-free.
        for &j in &relaxed {
            self.in_relaxed[j] = true;
        }
        let inst = self.state.instance();
        let clash = relaxed.iter().any(|&j| inst.partners(j).iter().any(|&k| self.in_relaxed[k]));
        for &j in &relaxed {
            self.in_relaxed[j] = false;
        }
        if !clash {
            self.offer(relaxed);
        }

        let bound = self.per_cut_bound();
        if self.pruned(bound) {
            return;
        }

        let set = self.state.most_constrained_set().expect("incomplete state has a set with positive need");
        let item = inst
            .set_range(set)
            .filter(|&j| self.state.is_free(j))
            .min_by(|&a, &b| self.reduced[a].total_cmp(&self.reduced[b]).then(a.cmp(&b)))
            .expect("propagation leaves enough free items");

        let mark = self.state.mark();
        if self.state.select(item) {
            self.dfs(lambda, depth + 1);
        }
        self.state.undo(mark);

        let mark = self.state.mark();
        self.state.exclude(item);
        self.dfs(lambda, depth + 1);
        self.state.undo(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::{brute_force_minmax_regret, enumerate_feasible, solve_greedy};
    use crate::fixtures::{transitive_three_sets_with, unconstrained};
    use crate::model::{CostInterval, Scenario};
    use crate::regret::cut_objective_coefficients;

    fn solved(outcome: MasterOutcome) -> MasterSolution {
        match outcome {
            MasterOutcome::Solved { solution, .. } => solution,
            MasterOutcome::TimeLimit { .. } => panic!("time limit"),
        }
    }

    #[test]
    fn single_cut_degenerate_is_deterministic_optimum() {
        let iv = CostInterval::fixed;
        let inst = unconstrained(&[&[iv(4), iv(2), iv(9)], &[iv(3), iv(8)]], &[2, 1]);
        let y = Selection::new(vec![vec![0, 2], vec![1]]);
        let cuts: CutSet = [y.clone()].into_iter().collect();
        let sol = solved(solve_master(&inst, &cuts, &SolverConfig::default(), None).unwrap());
        let opt = solve_greedy(&inst, &Scenario::lower(&inst));
        assert_eq!(&sol.x_hat, opt.selection().unwrap());
        assert_eq!(sol.objective, opt.value().unwrap() - (4 + 9 + 8));
    }

    #[test]
    fn all_cuts_give_true_minmax_regret() {
        let iv = CostInterval::new;
        let inst = transitive_three_sets_with(&[
            [iv(1, 9), iv(3, 4), iv(0, 7)],
            [iv(2, 2), iv(5, 8), iv(1, 6)],
            [iv(4, 10), iv(0, 3), iv(2, 5)],
        ]);
        let all: CutSet = enumerate_feasible(&inst)
            .unwrap()
            .into_iter()
            .map(|x| Selection::from_flat(&inst, x))
            .collect();
        let sol = solved(solve_master(&inst, &all, &SolverConfig::default(), None).unwrap());
        assert_eq!(sol.objective, brute_force_minmax_regret(&inst).unwrap().regret);
        let worst = all
            .iter()
            .map(|y| cut_objective_coefficients(&inst, y).eval(&inst, &sol.x_hat))
            .max()
            .unwrap();
        assert_eq!(worst, sol.objective);
    }

    #[test]
    fn repeated_cut_changes_nothing() {
        let iv = CostInterval::new;
        let inst = unconstrained(&[&[iv(1, 9), iv(3, 4), iv(0, 7)], &[iv(2, 6), iv(5, 8)]], &[1, 1]);
        let y = Selection::new(vec![vec![2], vec![0]]);
        let once: CutSet = [y.clone()].into_iter().collect();
        let twice: CutSet = [y.clone(), y].into_iter().collect();
        assert_eq!(twice.len(), 1);
        assert_eq!(
            solved(solve_master(&inst, &once, &SolverConfig::default(), None).unwrap()),
            solved(solve_master(&inst, &twice, &SolverConfig::default(), None).unwrap())
        );
    }
}
