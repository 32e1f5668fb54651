//! Initial cuts and upper bounds: RIS optima of sampled extreme scenarios,
//! plus an evolutionary search over feasible selections scored by exact
//! regret.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::det::RisSolver;
use crate::error::{Error, Result};
use crate::model::{evaluate_regret, is_feasible, midpoint_scenario, sample_extreme_scenario, Instance, Selection};
use crate::regret::CutSet;

/// Attempts per mutation or crossover before giving back the parent.
pub const RETRY_BUDGET: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvoParams {
    pub iterations: usize,
    pub population_size: usize,
    /// Crossovers per iteration, and separately mutations per iteration.
    pub ops_per_iteration: usize,
    pub rng_seed: u64,
}

impl Default for EvoParams {
    fn default() -> Self {
        Self { iterations: 20, population_size: 10, ops_per_iteration: 100, rng_seed: 0 }
    }
}

impl EvoParams {
    pub fn check(&self) -> Result<()> {
        if self.iterations == 0 || self.population_size == 0 || self.ops_per_iteration == 0 {
            return Err(Error::Params("evolution parameters must be positive".into()));
        }
        Ok(())
    }
}

/// Distinct feasible selections with their regrets, best first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Population {
    pub members: Vec<(Selection, i64)>,
    /// Best regret after seeding and after each iteration.
    pub best_history: Vec<i64>,
}

impl Population {
    pub fn best(&self) -> Option<&(Selection, i64)> {
        self.members.first()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Replaces a random number of chosen items by unchosen ones, in a random
/// number of sets. Returns `x` unchanged when no feasible change turns up.
pub fn mutate<R: Rng + ?Sized>(instance: &Instance, x: &Selection, rng: &mut R) -> Selection {
    let open: Vec<usize> = (0..instance.n_sets()).filter(|&s| instance.quota(s) < instance.set_size(s)).collect();
    if open.is_empty() {
        return x.clone();
    }
    for _ in 0..RETRY_BUDGET {
        let mut chosen = x.chosen().to_vec();
        let n_sets = rng.gen_range(1..=open.len());
        for k in sample(rng, open.len(), n_sets) {
            let s = open[k];
            let (p, r) = (instance.quota(s), instance.set_size(s));
            let swaps = rng.gen_range(1..=p.min(r - p));
            let mut inside = vec![false; r];
            chosen[s].iter().for_each(|&i| inside[i] = true);
            let mut ins: Vec<usize> = (0..r).filter(|&i| inside[i]).collect();
            let mut outs: Vec<usize> = (0..r).filter(|&i| !inside[i]).collect();
            for _ in 0..swaps {
                let a = ins.swap_remove(rng.gen_range(0..ins.len()));
                let b = outs.swap_remove(rng.gen_range(0..outs.len()));
                ins.push(b);
                outs.push(a);
            }
            chosen[s] = ins;
        }
        let candidate = Selection::new(chosen);
        if is_feasible(instance, &candidate) {
            return candidate;
        }
    }
    x.clone()
}

/// Takes a random subset of sets from `x2` and the rest from `x1`. Falls back
/// to `x1` when no feasible mix turns up.
pub fn crossover<R: Rng + ?Sized>(instance: &Instance, x1: &Selection, x2: &Selection, rng: &mut R) -> Selection {
    if x1 == x2 {
        return x1.clone();
    }
    for _ in 0..RETRY_BUDGET {
        let chosen = (0..instance.n_sets())
            .map(|s| if rng.gen_bool(0.5) { x2.chosen()[s].clone() } else { x1.chosen()[s].clone() })
            .collect();
        let candidate = Selection::new(chosen);
        if is_feasible(instance, &candidate) {
            return candidate;
        }
    }
    x1.clone()
}

struct Scorer<'a> {
    instance: &'a Instance,
    solver: &'a dyn RisSolver,
    memo: HashMap<Selection, i64>,
}

impl Scorer<'_> {
    fn regret(&mut self, x: &Selection) -> Result<i64> {
        if let Some(&r) = self.memo.get(x) {
            return Ok(r);
        }
        let r = evaluate_regret(self.instance, x, self.solver)?.regret;
        self.memo.insert(x.clone(), r);
        Ok(r)
    }
}

/// Evolutionary search seeded with the midpoint-scenario optimum.
pub fn evolve(instance: &Instance, params: &EvoParams, solver: &dyn RisSolver) -> Result<Population> {
    params.check()?;
    let (seed, _) = solver.solve(instance, &midpoint_scenario(instance))?.into_optimal().ok_or(Error::Infeasible)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut scorer = Scorer { instance, solver, memo: HashMap::new() };
    let seed_regret = scorer.regret(&seed)?;
    let mut pop = Population { members: vec![(seed, seed_regret)], best_history: vec![seed_regret] };

    for _ in 0..params.iterations {
        let mut offspring = Vec::with_capacity(2 * params.ops_per_iteration);
        for _ in 0..params.ops_per_iteration {
            let a = &pop.members[rng.gen_range(0..pop.len())].0;
            let b = &pop.members[rng.gen_range(0..pop.len())].0;
            offspring.push(crossover(instance, a, b, &mut rng));
        }
        for _ in 0..params.ops_per_iteration {
            let a = &pop.members[rng.gen_range(0..pop.len())].0;
            offspring.push(mutate(instance, a, &mut rng));
        }
        for x in offspring {
            let r = scorer.regret(&x)?;
            pop.members.push((x, r));
        }
        pop.members.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        pop.members.dedup_by(|a, b| a.0 == b.0);
        pop.members.truncate(params.population_size);
        pop.best_history.push(pop.members[0].1);
    }
    Ok(pop)
}

#[derive(Debug, Clone)]
pub struct Initialization {
    pub cuts: CutSet,
    pub population: Population,
}

/// Cuts from `n_scenarios` sampled extreme scenarios, then every member of the
/// evolved population.
pub fn initialize_cuts(
    instance: &Instance,
    n_scenarios: usize,
    rng_seed: u64,
    evo: &EvoParams,
    solver: &dyn RisSolver,
) -> Result<Initialization> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut cuts = CutSet::new();
    for _ in 0..n_scenarios {
        let scenario = sample_extreme_scenario(instance, &mut rng);
        let (y, _) = solver.solve(instance, &scenario)?.into_optimal().ok_or(Error::Infeasible)?;
        cuts.insert(y);
    }
    let population = evolve(instance, evo, solver)?;
    for (x, _) in &population.members {
        cuts.insert(x.clone());
    }
    Ok(Initialization { cuts, population })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::{brute_force_minmax_regret, RisDispatcher};
    use crate::fixtures::{transitive_three_sets, transitive_three_sets_with, unconstrained};
    use crate::model::CostInterval;

    fn example() -> Instance {
        let iv = CostInterval::new;
        transitive_three_sets_with(&[
            [iv(1, 9), iv(3, 4), iv(0, 7)],
            [iv(2, 2), iv(5, 8), iv(1, 6)],
            [iv(4, 10), iv(0, 3), iv(2, 5)],
        ])
    }

    #[test]
    fn full_sets_never_mutate() {
        let iv = CostInterval::fixed;
        let inst = unconstrained(&[&[iv(1), iv(2)], &[iv(3)]], &[2, 1]);
        let x = Selection::new(vec![vec![0, 1], vec![0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(mutate(&inst, &x, &mut rng), x);
    }

    #[test]
    fn single_set_mutation_flips() {
        let iv = CostInterval::fixed;
        let inst = unconstrained(&[&[iv(1), iv(2)]], &[1]);
        let x = Selection::new(vec![vec![0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(mutate(&inst, &x, &mut rng), Selection::new(vec![vec![1]]));
    }

    #[test]
    fn crossover_identity() {
        let inst = example();
        let x = Selection::new(vec![vec![0, 2], vec![1, 2], vec![1, 2]]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(crossover(&inst, &x, &x, &mut rng), x);
    }

    #[test]
    fn degenerate_population_has_zero_regret() {
        let inst = transitive_three_sets(&[[3, 1, 4], [1, 5, 9], [2, 6, 5]]);
        let pop = evolve(&inst, &EvoParams::default(), &RisDispatcher::for_instance(&inst)).unwrap();
        assert_eq!(pop.best().unwrap().1, 0);
    }

    #[test]
    fn evolve_is_sound_monotone_and_deterministic() {
        let inst = example();
        let solver = RisDispatcher::for_instance(&inst);
        let params = EvoParams { rng_seed: 9, ..EvoParams::default() };
        let pop = evolve(&inst, &params, &solver).unwrap();
        assert!(pop.best_history.windows(2).all(|w| w[1] <= w[0]));
        assert!(pop.best().unwrap().1 >= brute_force_minmax_regret(&inst).unwrap().regret);
        assert!(pop.members.iter().all(|(x, _)| is_feasible(&inst, x)));
        assert!(pop.len() <= params.population_size);
        assert_eq!(pop, evolve(&inst, &params, &solver).unwrap());
    }

    #[test]
    fn degenerate_scenarios_collapse_to_one_cut() {
        let iv = CostInterval::fixed;
        let inst = unconstrained(&[&[iv(4), iv(2), iv(9)], &[iv(3), iv(8)]], &[1, 1]);
        let solver = RisDispatcher::for_instance(&inst);
        let evo = EvoParams { iterations: 1, ..EvoParams::default() };
        let init = initialize_cuts(&inst, 100, 5, &evo, &solver).unwrap();
        // One scenario cut; the population adds only non-optimal extras.
        let optimum = Selection::new(vec![vec![1], vec![0]]);
        assert_eq!(init.cuts.iter().next(), Some(&optimum));
        assert_eq!(init.cuts.len(), init.population.len());
    }
}
