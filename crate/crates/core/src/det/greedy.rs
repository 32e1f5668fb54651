use super::RisSolution;
use crate::model::{Instance, Scenario, Selection};

/// Cheapest `quota` items of every set, ignoring forbidden pairs. Ties go to
/// the lower item index, which yields the lexicographically smallest optimum.
pub fn solve_greedy(instance: &Instance, scenario: &Scenario) -> RisSolution {
    let mut chosen = Vec::with_capacity(instance.n_sets());
    let mut value = 0;
    for s in 0..instance.n_sets() {
        let range = instance.set_range(s);
        let base = range.start;
        let mut order: Vec<usize> = range.collect();
        order.sort_by_key(|&j| (scenario.cost(j), j));
        let picked = &order[..instance.quota(s)];
        value += picked.iter().map(|&j| scenario.cost(j)).sum::<i64>();
        chosen.push(picked.iter().map(|&j| j - base).collect());
    }
    RisSolution::Optimal { selection: Selection::new(chosen), value }
}
