//! Small hand-built instances used by tests, the CLI and the Python bindings.

use crate::model::{CostInterval, Instance, ItemRef, ItemSet};

/// Three sets of three items, two to pick from each, with forbidden pairs
/// `(0,0)-(1,0)`, `(1,0)-(2,0)`, `(0,0)-(2,0)` and `(0,1)-(1,1)`. The first
/// three pairs form a triangle, so the conflict structure is a union of
/// cliques. Costs are degenerate.
pub fn transitive_three_sets(costs: &[[i64; 3]; 3]) -> Instance {
    let intervals = costs.map(|row| row.map(CostInterval::fixed));
    transitive_three_sets_with(&intervals)
}

pub fn transitive_three_sets_with(intervals: &[[CostInterval; 3]; 3]) -> Instance {
    let sets = intervals.iter().map(|row| ItemSet::new(2, row.to_vec())).collect();
    let r = ItemRef::new;
    let pairs = [
        (r(0, 0), r(1, 0)),
        (r(1, 0), r(2, 0)),
        (r(0, 0), r(2, 0)),
        (r(0, 1), r(1, 1)),
    ];
    Instance::new(sets, pairs).expect("fixture is well-formed")
}

/// Instance without forbidden pairs.
pub fn unconstrained(sets: &[&[CostInterval]], quotas: &[usize]) -> Instance {
    let sets = sets
        .iter()
        .zip(quotas)
        .map(|(items, &p)| ItemSet::new(p, items.to_vec()))
        .collect();
    Instance::new(sets, []).expect("fixture is well-formed")
}
