//! Restricted items selection: pick a fixed number of items from each of
//! several sets, avoiding forbidden pairs, at minimum cost. Also its interval
//! min-max regret variant, where each cost is only known to lie in a range.
//!
//! ```
//! use iris_core::{minmax_regret, CostInterval, Instance, ItemSet, SolverConfig};
//!
//! let sets = vec![ItemSet::new(1, vec![CostInterval::new(0, 10), CostInterval::new(4, 5)])];
//! let inst = Instance::new(sets, []).unwrap();
//! let res = minmax_regret(&inst, &SolverConfig::default()).unwrap();
//! assert_eq!(res.regret, 5);
//! ```

pub mod bench;
pub mod det;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod generator;
pub mod heuristics;
pub mod io;
pub mod model;
pub mod reductions;
pub mod regret;

pub use det::{classify, solve_ris, RisDispatcher, RisSolution, RisSolver, StructureClass};
pub use error::{Error, Result};
pub use generator::{generate_instance, GenParams, Mode};
pub use model::{
    cost_of, evaluate_regret, is_feasible, worst_case_scenario, CostInterval, Instance, ItemRef, ItemSet,
    RegretReport, Scenario, Selection,
};
pub use regret::{minmax_regret, RobustResult, RobustStatus, SolverConfig};
