//! Partial-assignment state shared by the branch-and-bound searches.

use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Free,
    In,
    Out,
}

/// Item statuses with per-set counters and an undo trail.
///
/// Selecting an item excludes all of its forbidden partners. Every change is
/// from `Free`, so undoing only needs the item index.
pub(crate) struct SearchState<'a> {
    inst: &'a Instance,
    status: Vec<Status>,
    selected: Vec<usize>,
    free: Vec<usize>,
    trail: Vec<usize>,
}

impl<'a> SearchState<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        Self {
            inst,
            status: vec![Status::Free; inst.n_items()],
            selected: vec![0; inst.n_sets()],
            free: (0..inst.n_sets()).map(|s| inst.set_size(s)).collect(),
            trail: Vec::new(),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    #[cfg(test)]
    pub fn status(&self, j: usize) -> Status {
        self.status[j]
    }

    pub fn is_free(&self, j: usize) -> bool {
        self.status[j] == Status::Free
    }

    pub fn is_in(&self, j: usize) -> bool {
        self.status[j] == Status::In
    }

    /// Items still to pick in `set`.
    pub fn need(&self, set: usize) -> usize {
        self.inst.quota(set) - self.selected[set]
    }

    #[cfg(test)]
    pub fn free_count(&self, set: usize) -> usize {
        self.free[set]
    }

    pub fn is_complete(&self) -> bool {
        (0..self.inst.n_sets()).all(|s| self.need(s) == 0)
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let j = self.trail.pop().unwrap();
            let s = self.inst.set_of(j);
            if self.status[j] == Status::In {
                self.selected[s] -= 1;
            }
            self.free[s] += 1;
            self.status[j] = Status::Free;
        }
    }

    fn set_status(&mut self, j: usize, to: Status) {
        debug_assert_eq!(self.status[j], Status::Free);
        let s = self.inst.set_of(j);
        self.status[j] = to;
        self.free[s] -= 1;
        if to == Status::In {
            self.selected[s] += 1;
        }
        self.trail.push(j);
    }

    /// Selects a free item and excludes its partners. Returns `false` when a
    /// partner is already selected or the set quota is already met.
    pub fn select(&mut self, j: usize) -> bool {
        let inst = self.inst;
        if self.need(inst.set_of(j)) == 0 {
            return false;
        }
        self.set_status(j, Status::In);
        for &k in inst.partners(j) {
            match self.status[k] {
                Status::In => return false,
                Status::Free => self.set_status(k, Status::Out),
                Status::Out => {}
            }
        }
        true
    }

    pub fn exclude(&mut self, j: usize) {
        self.set_status(j, Status::Out);
    }

    /// Forces selections in sets with exactly as many free items as they still
    /// need and closes sets whose quota is met. Returns `false` when some set
    /// can no longer reach its quota.
    pub fn propagate(&mut self) -> bool {
        let inst = self.inst;
        loop {
            let mut changed = false;
            for s in 0..inst.n_sets() {
                let need = self.need(s);
                let free = self.free[s];
                if free < need {
                    return false;
                }
                if free == 0 {
                    continue;
                }
                if need == 0 {
                    for j in inst.set_range(s) {
                        if self.is_free(j) {
                            self.exclude(j);
                        }
                    }
                    changed = true;
                } else if free == need {
                    for j in inst.set_range(s) {
                        if self.is_free(j) && !self.select(j) {
                            return false;
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Set with a positive need and the fewest spare free items; ties go to
    /// the lowest set index.
    pub fn most_constrained_set(&self) -> Option<usize> {
        (0..self.inst.n_sets())
            .filter(|&s| self.need(s) > 0)
            .min_by_key(|&s| (self.free[s] - self.need(s), s))
    }

    pub fn selected_items(&self) -> Vec<usize> {
        (0..self.inst.n_items()).filter(|&j| self.is_in(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::transitive_three_sets;

    #[test]
    fn select_excludes_partners_and_undo_restores() {
        let inst = transitive_three_sets(&[[1, 1, 1]; 3]);
        let mut st = SearchState::new(&inst);
        let m = st.mark();
        assert!(st.select(0));
        // (0,0) conflicts with (1,0) and (2,0)
        assert_eq!(st.status(3), Status::Out);
        assert_eq!(st.status(6), Status::Out);
        assert_eq!(st.free_count(1), 2);
        assert!(st.propagate());
        // set 1 and set 2 now have exactly two free items each
        assert!(st.is_in(4) && st.is_in(5) && st.is_in(7) && st.is_in(8));
        // (0,1) conflicts with (1,1), so set 0 must take (0,2)
        assert!(st.is_in(2));
        assert!(st.is_complete());
        st.undo(m);
        assert!((0..9).all(|j| st.is_free(j)));
        assert_eq!(st.need(0), 2);
        assert_eq!(st.free_count(0), 3);
    }

    #[test]
    fn propagation_detects_dead_end() {
        let inst = transitive_three_sets(&[[1, 1, 1]; 3]);
        let mut st = SearchState::new(&inst);
        st.exclude(1);
        st.exclude(2);
        assert!(st.propagate() == false);
    }
}
