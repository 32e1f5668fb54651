//! Instance model: item sets with interval costs, forbidden pairs, selections
//! and scenarios, plus cost and regret evaluation.
//!
//! Items are addressed either by an [`ItemRef`] (set, item) or by a flat index
//! in `0..instance.n_items()`, where the items of set `i` occupy
//! `instance.set_range(i)`. Solvers work on flat indices.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::det::RisSolver;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ItemRef {
    pub set: usize,
    pub item: usize,
}

impl ItemRef {
    pub const fn new(set: usize, item: usize) -> Self {
        Self { set, item }
    }
}

impl fmt::Display for ItemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.set, self.item)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostInterval {
    pub lo: i64,
    pub hi: i64,
}

impl CostInterval {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub const fn fixed(cost: i64) -> Self {
        Self { lo: cost, hi: cost }
    }

    pub const fn width(&self) -> i64 {
        self.hi - self.lo
    }

    pub const fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Mid-point rounded down.
    pub fn midpoint(&self) -> i64 {
        (self.lo + self.hi).div_euclid(2)
    }
}

/// Two items that may not be selected together, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForbiddenPair {
    a: ItemRef,
    b: ItemRef,
}

impl ForbiddenPair {
    pub fn new(x: ItemRef, y: ItemRef) -> Self {
        if x <= y {
            Self { a: x, b: y }
        } else {
            Self { a: y, b: x }
        }
    }

    pub fn a(&self) -> ItemRef {
        self.a
    }

    pub fn b(&self) -> ItemRef {
        self.b
    }

    pub fn is_same_set(&self) -> bool {
        self.a.set == self.b.set
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemSet {
    pub quota: usize,
    pub items: Vec<CostInterval>,
}

impl ItemSet {
    pub fn new(quota: usize, items: Vec<CostInterval>) -> Self {
        Self { quota, items }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    ZeroQuota { set: usize },
    QuotaExceedsSetSize { set: usize, quota: usize, size: usize },
    InvertedInterval { item: ItemRef },
    NegativeCost { item: ItemRef },
    PairOutOfRange { pair: usize },
    SelfPair { pair: usize },
    SameSetPair { pair: usize },
    DuplicatePair { pair: usize },
}

impl ViolationKind {
    pub fn severity(&self) -> Severity {
        match self {
            ViolationKind::SameSetPair { .. } | ViolationKind::DuplicatePair { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::ZeroQuota { set } => write!(f, "set {set}: quota must be positive"),
            ViolationKind::QuotaExceedsSetSize { set, quota, size } => {
                write!(f, "set {set}: quota exceeds set size ({quota} > {size})")
            }
            ViolationKind::InvertedInterval { item } => write!(f, "item {item}: lower bound exceeds upper bound"),
            ViolationKind::NegativeCost { item } => write!(f, "item {item}: negative cost"),
            ViolationKind::PairOutOfRange { pair } => write!(f, "pair {pair}: item index out of range"),
            ViolationKind::SelfPair { pair } => write!(f, "pair {pair}: item paired with itself"),
            ViolationKind::SameSetPair { pair } => write!(f, "pair {pair}: both items in the same set"),
            ViolationKind::DuplicatePair { pair } => write!(f, "pair {pair}: duplicate pair"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<ViolationKind>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn errors(&self) -> impl Iterator<Item = &ViolationKind> {
        self.violations.iter().filter(|v| v.severity() == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &ViolationKind> {
        self.violations.iter().filter(|v| v.severity() == Severity::Warning)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks raw instance data. An empty report means the data is well-formed;
/// warnings (same-set or duplicate pairs) do not prevent construction.
pub fn validate_parts(sets: &[ItemSet], pairs: &[(ItemRef, ItemRef)]) -> ValidationReport {
    let mut violations = Vec::new();
    for (s, set) in sets.iter().enumerate() {
        if set.quota == 0 {
            violations.push(ViolationKind::ZeroQuota { set: s });
        } else if set.quota > set.items.len() {
            violations.push(ViolationKind::QuotaExceedsSetSize {
                set: s,
                quota: set.quota,
                size: set.items.len(),
            });
        }
        for (j, iv) in set.items.iter().enumerate() {
            let item = ItemRef::new(s, j);
            if iv.lo < 0 || iv.hi < 0 {
                violations.push(ViolationKind::NegativeCost { item });
            }
            if iv.lo > iv.hi {
                violations.push(ViolationKind::InvertedInterval { item });
            }
        }
    }
    let in_range = |r: &ItemRef| r.set < sets.len() && r.item < sets[r.set].items.len();
    let mut seen = BTreeSet::new();
    for (k, (x, y)) in pairs.iter().enumerate() {
        if !in_range(x) || !in_range(y) {
            violations.push(ViolationKind::PairOutOfRange { pair: k });
            continue;
        }
        if x == y {
            violations.push(ViolationKind::SelfPair { pair: k });
            continue;
        }
        let pair = ForbiddenPair::new(*x, *y);
        if pair.is_same_set() {
            violations.push(ViolationKind::SameSetPair { pair: k });
        }
        if !seen.insert(pair) {
            violations.push(ViolationKind::DuplicatePair { pair: k });
        }
    }
    ValidationReport { violations }
}

/// A validated instance. Forbidden pairs are canonicalized and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    sets: Vec<ItemSet>,
    forbidden: Vec<ForbiddenPair>,
    offsets: Vec<usize>,
    set_of: Vec<usize>,
    intervals: Vec<CostInterval>,
    partners: Vec<Vec<usize>>,
}

impl Instance {
    pub fn new(sets: Vec<ItemSet>, pairs: impl IntoIterator<Item = (ItemRef, ItemRef)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let report = validate_parts(&sets, &pairs);
        if report.has_errors() {
            return Err(Error::Invalid(report));
        }

        let mut offsets = Vec::with_capacity(sets.len() + 1);
        let mut set_of = Vec::new();
        let mut intervals = Vec::new();
        offsets.push(0);
        for (s, set) in sets.iter().enumerate() {
            set_of.extend(std::iter::repeat(s).take(set.items.len()));
            intervals.extend_from_slice(&set.items);
            offsets.push(intervals.len());
        }

        let forbidden: Vec<ForbiddenPair> = pairs
            .iter()
            .map(|&(x, y)| ForbiddenPair::new(x, y))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut partners = vec![Vec::new(); intervals.len()];
        for p in &forbidden {
            let a = offsets[p.a.set] + p.a.item;
            let b = offsets[p.b.set] + p.b.item;
            partners[a].push(b);
            partners[b].push(a);
        }
        for list in &mut partners {
            list.sort_unstable();
        }

        Ok(Self { sets, forbidden, offsets, set_of, intervals, partners })
    }

    /// Instance with every interval collapsed to the given scenario's cost.
    pub fn fixed_at(&self, scenario: &Scenario) -> Instance {
        let mut inst = self.clone();
        for (s, set) in inst.sets.iter_mut().enumerate() {
            let range = self.set_range(s);
            for (iv, j) in set.items.iter_mut().zip(range) {
                *iv = CostInterval::fixed(scenario.cost(j));
            }
        }
        inst.intervals = scenario.as_slice().iter().map(|&c| CostInterval::fixed(c)).collect();
        inst
    }

    /// Warnings carried by the instance (same-set pairs).
    pub fn validate(&self) -> ValidationReport {
        let pairs: Vec<_> = self.forbidden.iter().map(|p| (p.a, p.b)).collect();
        validate_parts(&self.sets, &pairs)
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn n_items(&self) -> usize {
        self.intervals.len()
    }

    pub fn sets(&self) -> &[ItemSet] {
        &self.sets
    }

    pub fn quota(&self, set: usize) -> usize {
        self.sets[set].quota
    }

    pub fn set_size(&self, set: usize) -> usize {
        self.sets[set].items.len()
    }

    pub fn total_quota(&self) -> usize {
        self.sets.iter().map(|s| s.quota).sum()
    }

    pub fn set_range(&self, set: usize) -> Range<usize> {
        self.offsets[set]..self.offsets[set + 1]
    }

    pub fn forbidden(&self) -> &[ForbiddenPair] {
        &self.forbidden
    }

    pub fn flat(&self, r: ItemRef) -> usize {
        self.offsets[r.set] + r.item
    }

    pub fn item_ref(&self, flat: usize) -> ItemRef {
        let set = self.set_of[flat];
        ItemRef::new(set, flat - self.offsets[set])
    }

    pub fn set_of(&self, flat: usize) -> usize {
        self.set_of[flat]
    }

    pub fn interval(&self, flat: usize) -> CostInterval {
        self.intervals[flat]
    }

    pub fn intervals(&self) -> &[CostInterval] {
        &self.intervals
    }

    /// Flat indices of the items that conflict with `flat`.
    pub fn partners(&self, flat: usize) -> &[usize] {
        &self.partners[flat]
    }

    pub fn conflicts(&self, a: usize, b: usize) -> bool {
        self.partners[a].binary_search(&b).is_ok()
    }

    pub fn is_degenerate(&self) -> bool {
        self.intervals.iter().all(CostInterval::is_degenerate)
    }
}

/// Chosen item indices per set, each list sorted ascending.
///
/// The derived ordering compares sets in order and is the lexicographic
/// tie-break used by the enumerating solvers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Selection {
    chosen: Vec<Vec<usize>>,
}

impl Selection {
    pub fn new(mut chosen: Vec<Vec<usize>>) -> Self {
        for list in &mut chosen {
            list.sort_unstable();
            list.dedup();
        }
        Self { chosen }
    }

    pub fn from_flat(instance: &Instance, flat: impl IntoIterator<Item = usize>) -> Self {
        let mut chosen = vec![Vec::new(); instance.n_sets()];
        for j in flat {
            let r = instance.item_ref(j);
            chosen[r.set].push(r.item);
        }
        Self::new(chosen)
    }

    pub fn from_mask(instance: &Instance, mask: &[bool]) -> Self {
        Self::from_flat(instance, mask.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j))
    }

    pub fn chosen(&self) -> &[Vec<usize>] {
        &self.chosen
    }

    pub fn into_chosen(self) -> Vec<Vec<usize>> {
        self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn items(&self) -> impl Iterator<Item = ItemRef> + '_ {
        self.chosen
            .iter()
            .enumerate()
            .flat_map(|(s, list)| list.iter().map(move |&j| ItemRef::new(s, j)))
    }

    pub fn contains(&self, r: ItemRef) -> bool {
        self.chosen.get(r.set).is_some_and(|l| l.binary_search(&r.item).is_ok())
    }

    /// Ascending flat indices. Requires a well-formed selection.
    pub fn flat_indices(&self, instance: &Instance) -> Vec<usize> {
        self.items().map(|r| instance.flat(r)).collect()
    }

    pub fn mask(&self, instance: &Instance) -> Vec<bool> {
        let mut mask = vec![false; instance.n_items()];
        for j in self.flat_indices(instance) {
            mask[j] = true;
        }
        mask
    }

    /// Set count matches and every index is in range. Quotas are not checked.
    pub fn is_well_formed(&self, instance: &Instance) -> bool {
        self.chosen.len() == instance.n_sets()
            && self
                .chosen
                .iter()
                .enumerate()
                .all(|(s, list)| list.iter().all(|&j| j < instance.set_size(s)))
    }

    pub fn check_well_formed(&self, instance: &Instance) -> Result<()> {
        if self.is_well_formed(instance) {
            Ok(())
        } else {
            Err(Error::BadSelection(format!(
                "expected {} sets with in-range item indices",
                instance.n_sets()
            )))
        }
    }
}

/// A realized cost per item, indexed by flat item index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scenario {
    cost: Vec<i64>,
}

impl Scenario {
    pub fn new(cost: Vec<i64>) -> Self {
        Self { cost }
    }

    pub fn from_per_set(per_set: &[Vec<i64>]) -> Self {
        Self { cost: per_set.iter().flatten().copied().collect() }
    }

    pub fn per_set(&self, instance: &Instance) -> Vec<Vec<i64>> {
        (0..instance.n_sets()).map(|s| self.cost[instance.set_range(s)].to_vec()).collect()
    }

    pub fn cost(&self, flat: usize) -> i64 {
        self.cost[flat]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.cost
    }

    pub fn lower(instance: &Instance) -> Self {
        Self { cost: instance.intervals().iter().map(|iv| iv.lo).collect() }
    }

    pub fn upper(instance: &Instance) -> Self {
        Self { cost: instance.intervals().iter().map(|iv| iv.hi).collect() }
    }

    pub fn is_within(&self, instance: &Instance) -> bool {
        self.cost.len() == instance.n_items()
            && self.cost.iter().zip(instance.intervals()).all(|(&c, iv)| iv.lo <= c && c <= iv.hi)
    }

    pub fn is_extreme(&self, instance: &Instance) -> bool {
        self.cost.len() == instance.n_items()
            && self.cost.iter().zip(instance.intervals()).all(|(&c, iv)| c == iv.lo || c == iv.hi)
    }
}

/// Quotas met exactly and no forbidden pair fully chosen.
pub fn is_feasible(instance: &Instance, x: &Selection) -> bool {
    if !x.is_well_formed(instance) {
        return false;
    }
    if x.chosen().iter().enumerate().any(|(s, list)| list.len() != instance.quota(s)) {
        return false;
    }
    instance.forbidden().iter().all(|p| !(x.contains(p.a()) && x.contains(p.b())))
}

/// Upper bounds on the chosen items, lower bounds elsewhere.
pub fn worst_case_scenario(instance: &Instance, x: &Selection) -> Scenario {
    let mut cost = Scenario::lower(instance).cost;
    for j in x.flat_indices(instance) {
        cost[j] = instance.interval(j).hi;
    }
    Scenario { cost }
}

pub fn cost_of(instance: &Instance, scenario: &Scenario, x: &Selection) -> i64 {
    x.items().map(|r| scenario.cost(instance.flat(r))).sum()
}

pub fn midpoint_scenario(instance: &Instance) -> Scenario {
    Scenario { cost: instance.intervals().iter().map(CostInterval::midpoint).collect() }
}

/// Each cost independently at its lower or upper bound with probability 1/2.
pub fn sample_extreme_scenario<R: Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Scenario {
    Scenario {
        cost: instance
            .intervals()
            .iter()
            .map(|iv| if rng.gen_bool(0.5) { iv.hi } else { iv.lo })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegretReport {
    pub regret: i64,
    /// Best alternative selection in the worst-case scenario.
    pub witness: Selection,
    pub scenario: Scenario,
}

/// Maximum regret of a feasible `x`: its cost in the worst-case scenario
/// minus the optimal cost in that scenario.
pub fn evaluate_regret(instance: &Instance, x: &Selection, solver: &dyn RisSolver) -> Result<RegretReport> {
    x.check_well_formed(instance)?;
    if !is_feasible(instance, x) {
        return Err(Error::BadSelection("selection is not feasible".into()));
    }
    let scenario = worst_case_scenario(instance, x);
    let best = solver.solve(instance, &scenario)?;
    let (witness, value) = best.into_optimal().ok_or(Error::Infeasible)?;
    let regret = cost_of(instance, &scenario, x) - value;
    debug_assert!(regret >= 0);
    Ok(RegretReport { regret, witness, scenario })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::RisDispatcher;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn iv(lo: i64, hi: i64) -> CostInterval {
        CostInterval::new(lo, hi)
    }

    fn three_sets() -> Instance {
        crate::fixtures::transitive_three_sets(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    }

    #[test]
    fn quota_above_set_size_is_reported() {
        let sets = vec![ItemSet::new(3, vec![iv(1, 2), iv(1, 2)])];
        let report = validate_parts(&sets, &[]);
        assert!(report.has_errors());
        assert!(report.to_string().contains("quota exceeds set size"));
        assert!(Instance::new(sets, []).is_err());
    }

    #[test]
    fn same_set_pair_is_a_warning() {
        let sets = vec![ItemSet::new(1, vec![iv(1, 2), iv(1, 2)]), ItemSet::new(1, vec![iv(0, 0)])];
        let pairs = [(ItemRef::new(0, 0), ItemRef::new(0, 1))];
        let report = validate_parts(&sets, &pairs);
        assert!(!report.has_errors());
        assert_eq!(report.warnings().count(), 1);
        let inst = Instance::new(sets, pairs).unwrap();
        assert_eq!(inst.validate().warnings().count(), 1);
    }

    #[test]
    fn bad_pairs_and_intervals_are_errors() {
        let sets = vec![ItemSet::new(1, vec![iv(3, 2)]), ItemSet::new(1, vec![iv(-1, 2)])];
        let pairs = [
            (ItemRef::new(0, 0), ItemRef::new(5, 0)),
            (ItemRef::new(1, 0), ItemRef::new(1, 0)),
        ];
        let report = validate_parts(&sets, &pairs);
        let errors: Vec<_> = report.errors().collect();
        assert_eq!(errors.len(), 4, "{report}");
    }

    #[test]
    fn duplicate_and_reversed_pairs_are_merged() {
        let sets = vec![ItemSet::new(1, vec![iv(1, 2); 2]), ItemSet::new(1, vec![iv(1, 2); 2])];
        let a = ItemRef::new(0, 1);
        let b = ItemRef::new(1, 0);
        let inst = Instance::new(sets, [(a, b), (b, a), (a, b)]).unwrap();
        assert_eq!(inst.forbidden().len(), 1);
        assert_eq!(inst.forbidden()[0].a(), a);
    }

    #[test]
    fn transitive_three_sets_is_well_formed() {
        let inst = three_sets();
        assert!(inst.validate().is_empty());
        assert_eq!(inst.n_items(), 9);
        assert_eq!(inst.forbidden().len(), 4);
    }

    #[test]
    fn feasibility_checks() {
        let inst = three_sets();
        // (1,1),(1,2) and (2,1),(2,2) in 1-based terms: pair (1,1,2,1) is violated.
        let x = Selection::new(vec![vec![0, 1], vec![0, 1], vec![1, 2]]);
        assert!(!is_feasible(&inst, &x));
        let short = Selection::new(vec![vec![0], vec![1, 2], vec![1, 2]]);
        assert!(!is_feasible(&inst, &short));
        let ok = Selection::new(vec![vec![0, 2], vec![1, 2], vec![1, 2]]);
        assert!(is_feasible(&inst, &ok));
        let clash = Selection::new(vec![vec![1, 2], vec![1, 2], vec![1, 2]]);
        assert!(!is_feasible(&inst, &clash));

        let free = crate::fixtures::unconstrained(&[&[iv(1, 2), iv(1, 3)], &[iv(0, 4)]], &[1, 1]);
        assert!(is_feasible(&free, &Selection::new(vec![vec![1], vec![0]])));
    }

    #[test]
    fn worst_case_and_costs() {
        let inst = crate::fixtures::unconstrained(&[&[iv(2, 5), iv(2, 5), iv(0, 1)]], &[1]);
        let x = Selection::new(vec![vec![0]]);
        let c = worst_case_scenario(&inst, &x);
        assert_eq!(c.as_slice(), &[5, 2, 0]);
        assert!(c.is_extreme(&inst));
        let zero = worst_case_scenario(&inst, &Selection::new(vec![vec![]]));
        assert_eq!(zero, Scenario::lower(&inst));

        let sc = Scenario::new(vec![3, 1, 2]);
        assert_eq!(cost_of(&inst, &sc, &Selection::new(vec![vec![0, 2]])), 5);
        assert_eq!(cost_of(&inst, &sc, &Selection::new(vec![vec![]])), 0);
    }

    #[test]
    fn midpoint_rounds_down() {
        let inst = crate::fixtures::unconstrained(&[&[iv(2, 6), iv(1, 100), iv(7, 7)]], &[1]);
        assert_eq!(midpoint_scenario(&inst).as_slice(), &[4, 50, 7]);
    }

    #[test]
    fn extreme_sampling() {
        let inst = crate::fixtures::unconstrained(&[&[iv(3, 3), iv(0, 1)]], &[1]);
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let sa = sample_extreme_scenario(&inst, &mut a);
            assert_eq!(sa, sample_extreme_scenario(&inst, &mut b));
            assert!(sa.is_extreme(&inst));
            assert_eq!(sa.cost(0), 3);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let ones: i64 = (0..10_000).map(|_| sample_extreme_scenario(&inst, &mut rng).cost(1)).sum();
        let frac = ones as f64 / 10_000.0;
        assert!((frac - 0.5).abs() <= 0.02, "fraction of upper bounds {frac}");
    }

    #[test]
    fn regret_on_degenerate_intervals() {
        let inst = crate::fixtures::unconstrained(&[&[iv(3, 3), iv(1, 1), iv(2, 2)]], &[2]);
        let solver = RisDispatcher::default();
        let opt = Selection::new(vec![vec![1, 2]]);
        assert_eq!(evaluate_regret(&inst, &opt, &solver).unwrap().regret, 0);
        let worse = Selection::new(vec![vec![0, 1]]);
        let report = evaluate_regret(&inst, &worse, &solver).unwrap();
        assert_eq!(report.regret, 1);
        assert_eq!(report.witness, opt);
    }

    #[test]
    fn regret_rejects_infeasible_selection() {
        let inst = crate::fixtures::unconstrained(&[&[iv(3, 3), iv(1, 1)]], &[1]);
        let x = Selection::new(vec![vec![0, 1]]);
        assert!(evaluate_regret(&inst, &x, &RisDispatcher::default()).is_err());
    }
}
