use super::search::SearchState;
use super::RisSolution;
use crate::model::{Instance, Scenario, Selection};

/// Depth-first branch-and-bound.
///
/// Node bound: cost of the selected items plus, per set, the cheapest free
/// items that fill the remaining quota (conflicts between free items are
/// relaxed). When that relaxed completion happens to be conflict-free it is
/// optimal for the subtree and the node is closed. Branching takes the
/// cheapest free item of the most constrained set, include-branch first.
///
/// `upper_bound_hint` only prunes. A hint below the optimum is a caller bug
/// and panics.
pub fn solve_bnb(instance: &Instance, scenario: &Scenario, upper_bound_hint: Option<i64>) -> RisSolution {
    let result = Bnb::new(instance, scenario, upper_bound_hint).run();
    if let (Some(hint), RisSolution::Infeasible) = (upper_bound_hint, &result) {
        let unhinted = Bnb::new(instance, scenario, None).run();
        assert!(
            !unhinted.is_optimal(),
            "upper_bound_hint {hint} is below the optimum {:?}",
            unhinted.value()
        );
    }
    result
}

struct Bnb<'a> {
    state: SearchState<'a>,
    scenario: &'a Scenario,
    order: Vec<Vec<usize>>,
    cutoff: Option<i64>,
    best: Option<(Vec<usize>, i64)>,
    in_relaxed: Vec<bool>,
}

impl<'a> Bnb<'a> {
    fn new(instance: &'a Instance, scenario: &'a Scenario, cutoff: Option<i64>) -> Self {
        let order = (0..instance.n_sets())
            .map(|s| {
                let mut items: Vec<usize> = instance.set_range(s).collect();
                items.sort_by_key(|&j| (scenario.cost(j), j));
                items
            })
            .collect();
        Self {
            state: SearchState::new(instance),
            scenario,
            order,
            cutoff,
            best: None,
            in_relaxed: vec![false; instance.n_items()],
        }
    }

    fn run(mut self) -> RisSolution {
        self.dfs();
        match self.best {
            Some((items, value)) => RisSolution::Optimal {
                selection: Selection::from_flat(self.state.instance(), items),
                value,
            },
            None => RisSolution::Infeasible,
        }
    }

    fn dfs(&mut self) {
        let mark = self.state.mark();
        if self.state.propagate() {
            self.expand();
        }
        self.state.undo(mark);
    }

    fn expand(&mut self) {
        let inst = self.state.instance();
        let mut bound: i64 = (0..inst.n_items())
            .filter(|&j| self.state.is_in(j))
            .map(|j| self.scenario.cost(j))
            .sum();
        let mut relaxed = Vec::new();
        for s in 0..inst.n_sets() {
            let need = self.state.need(s);
            let picks = self.order[s].iter().copied().filter(|&j| self.state.is_free(j)).take(need);
            for j in picks {
                bound += self.scenario.cost(j);
                relaxed.push(j);
            }
        }
        if self.cutoff.is_some_and(|c| bound > c) || self.best.as_ref().is_some_and(|(_, b)| bound >= *b) {
            return;
        }

        for &j in &relaxed {
            self.in_relaxed[j] = true;
        }
        let clash = relaxed.iter().any(|&j| inst.partners(j).iter().any(|&k| self.in_relaxed[k]));
        for &j in &relaxed {
            self.in_relaxed[j] = false;
        }
        if !clash {
            let mut items = self.state.selected_items();
            items.extend(relaxed);
            items.sort_unstable();
            self.best = Some((items, bound));
            return;
        }

        let set = self.state.most_constrained_set().expect("an incomplete state has a set with positive need");
        let item = self.order[set]
            .iter()
            .copied()
            .find(|&j| self.state.is_free(j))
            .expect("propagation leaves enough free items");

        let mark = self.state.mark();
        if self.state.select(item) {
            self.dfs();
        }
        self.state.undo(mark);

        let mark = self.state.mark();
        self.state.exclude(item);
        self.dfs();
        self.state.undo(mark);
    }
}
