//! Exact solvers for the deterministic problem: pick exactly `quota` items
//! from every set, never both items of a forbidden pair, at minimum total
//! cost under a fixed scenario.

mod bnb;
mod brute;
mod classify;
mod greedy;
pub(crate) mod search;

pub use bnb::solve_bnb;
pub use brute::{brute_force_minmax_regret, brute_force_ris, count_quota_selections, enumerate_feasible, ENUMERATION_LIMIT};
pub use classify::{classify, StructureClass};
pub(crate) use classify::components;
pub use greedy::solve_greedy;

use crate::error::Result;
use crate::flow;
use crate::model::{Instance, Scenario, Selection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RisStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RisSolution {
    Optimal { selection: Selection, value: i64 },
    Infeasible,
}

impl RisSolution {
    pub fn status(&self) -> RisStatus {
        match self {
            RisSolution::Optimal { .. } => RisStatus::Optimal,
            RisSolution::Infeasible => RisStatus::Infeasible,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, RisSolution::Optimal { .. })
    }

    pub fn value(&self) -> Option<i64> {
        match self {
            RisSolution::Optimal { value, .. } => Some(*value),
            RisSolution::Infeasible => None,
        }
    }

    pub fn selection(&self) -> Option<&Selection> {
        match self {
            RisSolution::Optimal { selection, .. } => Some(selection),
            RisSolution::Infeasible => None,
        }
    }

    pub fn into_optimal(self) -> Option<(Selection, i64)> {
        match self {
            RisSolution::Optimal { selection, value } => Some((selection, value)),
            RisSolution::Infeasible => None,
        }
    }
}

/// Anything that solves the deterministic problem exactly.
pub trait RisSolver {
    fn solve(&self, instance: &Instance, scenario: &Scenario) -> Result<RisSolution>;
}

/// Solves with a fixed strategy regardless of structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Greedy,
    Flow,
    BranchAndBound,
    BruteForce,
}

impl RisSolver for Strategy {
    fn solve(&self, instance: &Instance, scenario: &Scenario) -> Result<RisSolution> {
        match self {
            Strategy::Greedy => Ok(solve_greedy(instance, scenario)),
            Strategy::Flow => flow::solve_via_flow(instance, scenario),
            Strategy::BranchAndBound => Ok(solve_bnb(instance, scenario, None)),
            Strategy::BruteForce => brute_force_ris(instance, scenario),
        }
    }
}

/// Picks the solver from the conflict structure: sorting when there are no
/// pairs, min-cost flow when every conflict component is a clique, and
/// branch-and-bound otherwise.
///
/// The default value classifies on every call; [`RisDispatcher::for_instance`]
/// classifies once up front for repeated solves on one instance.
#[derive(Debug, Clone, Default)]
pub struct RisDispatcher {
    class: Option<StructureClass>,
}

impl RisDispatcher {
    pub fn for_instance(instance: &Instance) -> Self {
        Self { class: Some(classify(instance)) }
    }

    pub fn structure(&self) -> Option<&StructureClass> {
        self.class.as_ref()
    }
}

impl RisSolver for RisDispatcher {
    fn solve(&self, instance: &Instance, scenario: &Scenario) -> Result<RisSolution> {
        let owned;
        let class = match &self.class {
            Some(c) => c,
            None => {
                owned = classify(instance);
                &owned
            }
        };
        match class {
            StructureClass::Unconstrained => Ok(solve_greedy(instance, scenario)),
            StructureClass::CliqueComponents { classes } => flow::solve_with_classes(instance, scenario, classes),
            StructureClass::General => Ok(solve_bnb(instance, scenario, None)),
        }
    }
}

pub fn solve_ris(instance: &Instance, scenario: &Scenario) -> RisSolution {
    RisDispatcher::default()
        .solve(instance, scenario)
        .expect("dispatch always matches the solver's precondition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{transitive_three_sets, unconstrained};
    use crate::model::CostInterval;

    #[test]
    fn one_set_pick_one() {
        let inst = unconstrained(&[&[CostInterval::fixed(4), CostInterval::fixed(9)]], &[1]);
        let sol = solve_ris(&inst, &Scenario::lower(&inst));
        assert_eq!(sol.value(), Some(4));
    }

    #[test]
    fn dispatch_paths_agree_on_transitive_instance() {
        let inst = transitive_three_sets(&[[3, 1, 4], [1, 5, 9], [2, 6, 5]]);
        let sc = Scenario::lower(&inst);
        let auto = solve_ris(&inst, &sc).value();
        for strategy in [Strategy::Flow, Strategy::BranchAndBound, Strategy::BruteForce] {
            assert_eq!(strategy.solve(&inst, &sc).unwrap().value(), auto, "{strategy:?}");
        }
    }
}
