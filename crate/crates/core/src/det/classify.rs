use crate::model::{Instance, ItemRef};

/// Shape of the conflict graph (items as vertices, forbidden pairs as edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureClass {
    /// No forbidden pairs.
    Unconstrained,
    /// Every connected component is a clique. `classes` partitions all items,
    /// singletons included, ordered by their smallest member.
    CliqueComponents { classes: Vec<Vec<ItemRef>> },
    General,
}

impl StructureClass {
    pub fn name(&self) -> &'static str {
        match self {
            StructureClass::Unconstrained => "Unconstrained",
            StructureClass::CliqueComponents { .. } => "CliqueComponents",
            StructureClass::General => "General",
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the graph on `0..n` with the given edges, as
/// ascending lists ordered by smallest member.
pub(crate) fn components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    for (a, b) in edges {
        let a = find(&mut parent, a);
        let b = find(&mut parent, b);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        let root = find(&mut parent, j);
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[root]].push(j);
    }
    comps
}

/// Connected components of the conflict graph.
pub(crate) fn conflict_components(instance: &Instance) -> Vec<Vec<usize>> {
    components(instance.n_items(), instance.forbidden().iter().map(|p| (instance.flat(p.a()), instance.flat(p.b()))))
}

pub fn classify(instance: &Instance) -> StructureClass {
    if instance.forbidden().is_empty() {
        return StructureClass::Unconstrained;
    }
    let comps = conflict_components(instance);
    // Pairs are deduplicated, so a component of size s is a clique iff it
    // holds s(s-1)/2 pairs.
    let mut comp_of = vec![0usize; instance.n_items()];
    for (c, members) in comps.iter().enumerate() {
        for &j in members {
            comp_of[j] = c;
        }
    }
    let mut edges = vec![0usize; comps.len()];
    for p in instance.forbidden() {
        edges[comp_of[instance.flat(p.a())]] += 1;
    }
    let all_cliques = comps.iter().zip(&edges).all(|(members, &e)| {
        let s = members.len();
        e == s * (s - 1) / 2
    });
    if !all_cliques {
        return StructureClass::General;
    }
    let classes = comps
        .into_iter()
        .map(|members| members.into_iter().map(|j| instance.item_ref(j)).collect())
        .collect();
    StructureClass::CliqueComponents { classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{transitive_three_sets, unconstrained};
    use crate::model::{CostInterval, ItemSet};

    #[test]
    fn no_pairs_is_unconstrained() {
        let inst = unconstrained(&[&[CostInterval::fixed(1); 3]], &[1]);
        assert_eq!(classify(&inst), StructureClass::Unconstrained);
    }

    #[test]
    fn triangle_plus_edge_gives_six_classes() {
        let inst = transitive_three_sets(&[[0; 3]; 3]);
        let r = ItemRef::new;
        let StructureClass::CliqueComponents { classes } = classify(&inst) else {
            panic!("expected clique components");
        };
        assert_eq!(classes.len(), 6);
        assert_eq!(classes[0], vec![r(0, 0), r(1, 0), r(2, 0)]);
        assert_eq!(classes[1], vec![r(0, 1), r(1, 1)]);
        assert_eq!(classes[2], vec![r(0, 2)]);
        assert!(classes[2..].iter().all(|c| c.len() == 1));
    }

    #[test]
    fn path_is_general() {
        let sets = (0..3).map(|_| ItemSet::new(1, vec![CostInterval::fixed(1); 2])).collect();
        let r = ItemRef::new;
        let inst = Instance::new(sets, [(r(0, 0), r(1, 0)), (r(1, 0), r(2, 0))]).unwrap();
        assert_eq!(classify(&inst), StructureClass::General);
    }

    #[test]
    fn pair_order_does_not_matter() {
        let sets: Vec<_> = (0..3).map(|_| ItemSet::new(1, vec![CostInterval::fixed(1); 2])).collect();
        let r = ItemRef::new;
        let pairs = [(r(0, 0), r(1, 0)), (r(1, 0), r(2, 0)), (r(0, 0), r(2, 0))];
        let a = Instance::new(sets.clone(), pairs).unwrap();
        let b = Instance::new(sets, pairs.iter().rev().map(|&(x, y)| (y, x))).unwrap();
        assert_eq!(classify(&a), classify(&b));
    }
}
