//! Hardness reductions into the selection problem, usable as structured
//! instance factories.

mod dnf;
mod indepset;

pub use dnf::{
    check_dnf, default_b, dnf_to_iris, exists_forall, DnfReductionArtifacts, ItemRole, Literal, QuantifiedDnf, Var,
};
pub use indepset::{independence_number, independent_set_to_ris, Graph};
