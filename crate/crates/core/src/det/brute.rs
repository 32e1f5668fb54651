//! Exhaustive enumeration. Used as ground truth in tests; guarded by
//! [`ENUMERATION_LIMIT`].

use super::RisSolution;
use crate::error::{Error, Result};
use crate::model::{Instance, Scenario, Selection};
use crate::regret::{RobustResult, RobustStatus};

/// Upper bound on the number of quota-respecting selections an oracle will
/// enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of selections meeting every quota, forbidden pairs ignored.
pub fn count_quota_selections(instance: &Instance) -> u128 {
    (0..instance.n_sets()).fold(1u128, |acc, s| {
        acc.saturating_mul(binomial(instance.set_size(s), instance.quota(s)))
    })
}

fn check_guard(instance: &Instance) -> Result<()> {
    let count = count_quota_selections(instance);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit { count, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

struct Enumerator<'a, F> {
    inst: &'a Instance,
    taken: Vec<bool>,
    chosen: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize])> Enumerator<'_, F> {
    fn set(&mut self, s: usize) {
        if s == self.inst.n_sets() {
            (self.visit)(&self.chosen);
            return;
        }
        let start = self.inst.set_range(s).start;
        self.combo(s, start, self.inst.quota(s));
    }

    fn combo(&mut self, s: usize, from: usize, left: usize) {
        if left == 0 {
            self.set(s + 1);
            return;
        }
        let end = self.inst.set_range(s).end;
        for j in from..=end - left {
            if self.inst.partners(j).iter().any(|&k| self.taken[k]) {
                continue;
            }
            self.taken[j] = true;
            self.chosen.push(j);
            self.combo(s, j + 1, left - 1);
            self.chosen.pop();
            self.taken[j] = false;
        }
    }
}

/// Calls `visit` with the ascending flat indices of every feasible selection,
/// in lexicographic order.
fn for_each_feasible(instance: &Instance, visit: impl FnMut(&[usize])) {
    let mut e = Enumerator {
        inst: instance,
        taken: vec![false; instance.n_items()],
        chosen: Vec::with_capacity(instance.total_quota()),
        visit,
    };
    e.set(0);
}

/// Every feasible selection as ascending flat indices, lexicographically
/// ordered.
pub fn enumerate_feasible(instance: &Instance) -> Result<Vec<Vec<usize>>> {
    check_guard(instance)?;
    let mut all = Vec::new();
    for_each_feasible(instance, |items| all.push(items.to_vec()));
    Ok(all)
}

/// Exact optimum by enumeration; ties resolve to the lexicographically
/// smallest selection.
pub fn brute_force_ris(instance: &Instance, scenario: &Scenario) -> Result<RisSolution> {
    check_guard(instance)?;
    let mut best: Option<(Vec<usize>, i64)> = None;
    for_each_feasible(instance, |items| {
        let value: i64 = items.iter().map(|&j| scenario.cost(j)).sum();
        if best.as_ref().is_none_or(|(_, b)| value < *b) {
            best = Some((items.to_vec(), value));
        }
    });
    Ok(match best {
        Some((items, value)) => RisSolution::Optimal { selection: Selection::from_flat(instance, items), value },
        None => RisSolution::Infeasible,
    })
}

/// Exact min-max regret by enumerating every feasible `x` and, for each, every
/// alternative `y` under the worst-case scenario of `x`.
pub fn brute_force_minmax_regret(instance: &Instance) -> Result<RobustResult> {
    let feasible = enumerate_feasible(instance)?;
    if feasible.is_empty() {
        return Err(Error::Infeasible);
    }
    let lo: Vec<i64> = instance.intervals().iter().map(|iv| iv.lo).collect();
    let width: Vec<i64> = instance.intervals().iter().map(|iv| iv.width()).collect();
    let base: Vec<i64> = feasible.iter().map(|y| y.iter().map(|&j| lo[j]).sum()).collect();

    let mut in_x = vec![false; instance.n_items()];
    let mut best: Option<(usize, i64)> = None;
    for (xi, x) in feasible.iter().enumerate() {
        for &j in x {
            in_x[j] = true;
        }
        let x_cost: i64 = x.iter().map(|&j| lo[j] + width[j]).sum();
        let mut regret = 0;
        for (y, &b) in feasible.iter().zip(&base) {
            let y_cost = b + y.iter().filter(|&&j| in_x[j]).map(|&j| width[j]).sum::<i64>();
            regret = regret.max(x_cost - y_cost);
            if best.is_some_and(|(_, r)| regret >= r) {
                break;
            }
        }
        if best.is_none_or(|(_, r)| regret < r) {
            best = Some((xi, regret));
        }
        for &j in x {
            in_x[j] = false;
        }
    }
    let (xi, regret) = best.expect("feasible set is nonempty");
    Ok(RobustResult {
        x_star: Selection::from_flat(instance, feasible[xi].iter().copied()),
        regret,
        lower_bound: regret,
        upper_bound: regret,
        gap: 0.0,
        iterations: 0,
        status: RobustStatus::Optimal,
        trace: Vec::new(),
    })
}
