use std::collections::HashSet;

use crate::model::{Instance, Selection};

/// `x -> sum_j coeffs[j] * x_j - constant` over flat item indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn eval_flat(&self, x: &[usize]) -> i64 {
        x.iter().map(|&j| self.coeffs[j]).sum::<i64>() - self.constant
    }

    pub fn eval(&self, instance: &Instance, x: &Selection) -> i64 {
        self.eval_flat(&x.flat_indices(instance))
    }
}

/// The regret of `x` against the fixed alternative `y` in the worst-case
/// scenario of `x`, as a linear function of `x`: items of `y` weigh their
/// lower bound, all others their upper bound, minus the lower-bound cost of
/// `y`.
pub fn cut_objective_coefficients(instance: &Instance, y: &Selection) -> LinearForm {
    let mut coeffs: Vec<i64> = instance.intervals().iter().map(|iv| iv.hi).collect();
    let mut constant = 0;
    for j in y.flat_indices(instance) {
        let lo = instance.interval(j).lo;
        coeffs[j] = lo;
        constant += lo;
    }
    LinearForm { coeffs, constant }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub y: Selection,
}

/// Ordered adversary selections (oldest first) with the slack each had at the
/// last master solution.
#[derive(Debug, Clone, Default)]
pub struct CutSet {
    cuts: Vec<Cut>,
    slacks: Vec<i64>,
    seen: HashSet<Selection>,
}

impl CutSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `y` unless already present. Returns whether it was added.
    pub fn insert(&mut self, y: Selection) -> bool {
        if !self.seen.insert(y.clone()) {
            return false;
        }
        self.cuts.push(Cut { y });
        self.slacks.push(0);
        true
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn contains(&self, y: &Selection) -> bool {
        self.seen.contains(y)
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn iter(&self) -> impl Iterator<Item = &Selection> {
        self.cuts.iter().map(|c| &c.y)
    }

    pub fn slacks(&self) -> &[i64] {
        &self.slacks
    }

    pub fn set_slacks(&mut self, slacks: Vec<i64>) {
        assert_eq!(slacks.len(), self.cuts.len());
        self.slacks = slacks;
    }

    /// Records `c(x_hat)·y - z_hat` for every cut.
    pub fn update_slacks(&mut self, instance: &Instance, x_hat: &Selection, z_hat: i64) {
        let scenario = crate::model::worst_case_scenario(instance, x_hat);
        self.slacks = self
            .cuts
            .iter()
            .map(|c| crate::model::cost_of(instance, &scenario, &c.y) - z_hat)
            .collect();
    }
}

impl FromIterator<Selection> for CutSet {
    fn from_iter<I: IntoIterator<Item = Selection>>(iter: I) -> Self {
        let mut set = CutSet::new();
        for y in iter {
            set.insert(y);
        }
        set
    }
}

/// Drops up to `count` cuts with the largest slack, oldest first among equal
/// slacks. The newest cut is never removed, so at least one cut remains.
pub fn prune_cuts(cuts: &CutSet, count: usize) -> CutSet {
    let n = cuts.len();
    if n <= 1 || count == 0 {
        return cuts.clone();
    }
    let mut candidates: Vec<usize> = (0..n - 1).collect();
    candidates.sort_by_key(|&i| (std::cmp::Reverse(cuts.slacks[i]), i));
    let mut drop = vec![false; n];
    for &i in candidates.iter().take(count) {
        drop[i] = true;
    }
    let mut out = CutSet::new();
    let mut slacks = Vec::new();
    for (i, cut) in cuts.cuts.iter().enumerate() {
        if !drop[i] {
            out.insert(cut.y.clone());
            slacks.push(cuts.slacks[i]);
        }
    }
    out.set_slacks(slacks);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cost_of, worst_case_scenario};

    fn sel(items: &[usize]) -> Selection {
        Selection::new(vec![items.to_vec()])
    }

    fn with_slacks(slacks: &[i64]) -> CutSet {
        let mut cuts: CutSet = (0..slacks.len()).map(|i| sel(&[i])).collect();
        cuts.set_slacks(slacks.to_vec());
        cuts
    }

    #[test]
    fn prune_removes_largest_slack() {
        let pruned = prune_cuts(&with_slacks(&[0, 9, 3]), 1);
        let left: Vec<_> = pruned.iter().cloned().collect();
        assert_eq!(left, vec![sel(&[0]), sel(&[2])]);
        assert_eq!(pruned.slacks(), &[0, 3]);
    }

    #[test]
    fn prune_ties_remove_oldest() {
        let pruned = prune_cuts(&with_slacks(&[0, 0, 0, 0, 0]), 3);
        let left: Vec<_> = pruned.iter().cloned().collect();
        assert_eq!(left, vec![sel(&[3]), sel(&[4])]);
    }

    #[test]
    fn prune_keeps_newest_and_single_cut() {
        let one = with_slacks(&[5]);
        assert_eq!(prune_cuts(&one, 3).len(), 1);
        let pruned = prune_cuts(&with_slacks(&[1, 2, 100]), 5);
        let left: Vec<_> = pruned.iter().cloned().collect();
        assert_eq!(left, vec![sel(&[2])]);
    }

    #[test]
    fn duplicates_are_ignored() {
        let mut cuts = CutSet::new();
        assert!(cuts.insert(sel(&[1])));
        assert!(!cuts.insert(sel(&[1])));
        assert_eq!(cuts.len(), 1);
    }

    #[test]
    fn form_is_regret_against_y() {
        let iv = crate::model::CostInterval::new;
        let inst = crate::fixtures::unconstrained(&[&[iv(1, 4), iv(2, 7), iv(0, 3), iv(5, 5)]], &[2]);
        let all: Vec<Selection> = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]].iter().map(|p| sel(p)).collect();
        for y in &all {
            let form = cut_objective_coefficients(&inst, y);
            for x in &all {
                let c = worst_case_scenario(&inst, x);
                assert_eq!(form.eval(&inst, x), cost_of(&inst, &c, x) - cost_of(&inst, &c, y));
            }
        }
    }
}
