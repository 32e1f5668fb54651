//! Min-cost max-flow reformulation for instances whose conflict components
//! are cliques.
//!
//! Layers: one source per set supplying its quota, one node per item, one
//! node per clique class, and a terminal. Source-to-item arcs carry the item
//! cost; item-to-class and class-to-terminal arcs are free. Every arc has unit
//! capacity, so each class passes at most one unit and therefore at most one
//! of its items is selected.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::det::{classify, RisSolution, StructureClass};
use crate::error::{Error, Result};
use crate::model::{Instance, ItemRef, Scenario, Selection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Source { set: usize },
    Item(ItemRef),
    Class(usize),
    Terminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    pub cost: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: Vec<NodeKind>,
    pub arcs: Vec<Arc>,
    /// `(node, supply)` for each source.
    pub supplies: Vec<(usize, i64)>,
    pub terminal: usize,
}

impl FlowNetwork {
    pub fn total_supply(&self) -> i64 {
        self.supplies.iter().map(|&(_, s)| s).sum()
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph flow {\n  rankdir=LR;\n");
        for (v, kind) in self.nodes.iter().enumerate() {
            let label = match kind {
                NodeKind::Source { set } => {
                    let supply = self.supplies.iter().find(|&&(n, _)| n == v).map_or(0, |&(_, s)| s);
                    format!("p{set} ({supply})")
                }
                NodeKind::Item(r) => format!("i{}_{}", r.set, r.item),
                NodeKind::Class(c) => format!("e{c}"),
                NodeKind::Terminal => "t".to_string(),
            };
            let _ = writeln!(out, "  n{v} [label=\"{label}\"];");
        }
        for a in &self.arcs {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}/{}\"];", a.from, a.to, a.capacity, a.cost);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub flow_value: i64,
    pub total_cost: i64,
    pub arc_flows: Vec<i64>,
}

/// Builds the layered network. `classes` must partition the items into
/// cliques of the conflict graph that together cover every forbidden pair.
pub fn build_network(instance: &Instance, scenario: &Scenario, classes: &[Vec<ItemRef>]) -> Result<FlowNetwork> {
    let n = instance.n_items();
    let mut class_of = vec![usize::MAX; n];
    for (c, members) in classes.iter().enumerate() {
        for &r in members {
            if r.set >= instance.n_sets() || r.item >= instance.set_size(r.set) {
                return Err(Error::NotCliqueStructured(format!("class {c} names unknown item {r}")));
            }
            let j = instance.flat(r);
            if class_of[j] != usize::MAX {
                return Err(Error::NotCliqueStructured(format!("item {r} appears in two classes")));
            }
            class_of[j] = c;
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !instance.conflicts(instance.flat(a), instance.flat(b)) {
                    return Err(Error::NotCliqueStructured(format!("class {c} is not a clique: {a} and {b}")));
                }
            }
        }
    }
    if let Some(j) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::NotCliqueStructured(format!("item {} has no class", instance.item_ref(j))));
    }
    if let Some(p) = instance
        .forbidden()
        .iter()
        .find(|p| class_of[instance.flat(p.a())] != class_of[instance.flat(p.b())])
    {
        return Err(Error::NotCliqueStructured(format!("pair {}-{} spans two classes", p.a(), p.b())));
    }

    let m = instance.n_sets();
    let item_node = |j: usize| m + j;
    let class_node = |c: usize| m + n + c;
    let terminal = m + n + classes.len();

    let mut nodes: Vec<NodeKind> = (0..m).map(|set| NodeKind::Source { set }).collect();
    nodes.extend((0..n).map(|j| NodeKind::Item(instance.item_ref(j))));
    nodes.extend((0..classes.len()).map(NodeKind::Class));
    nodes.push(NodeKind::Terminal);

    let mut arcs = Vec::with_capacity(2 * n + classes.len());
    for j in 0..n {
        arcs.push(Arc { from: instance.set_of(j), to: item_node(j), capacity: 1, cost: scenario.cost(j) });
    }
    for (j, &c) in class_of.iter().enumerate() {
        arcs.push(Arc { from: item_node(j), to: class_node(c), capacity: 1, cost: 0 });
    }
    for c in 0..classes.len() {
        arcs.push(Arc { from: class_node(c), to: terminal, capacity: 1, cost: 0 });
    }
    let supplies = (0..m).map(|s| (s, instance.quota(s) as i64)).collect();

    Ok(FlowNetwork { nodes, arcs, supplies, terminal })
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([cap, 0]);
        self.cost.extend([cost, -cost]);
        self.adj[u].push(e);
        self.adj[v].push(e + 1);
        e
    }
}

/// Successive shortest augmenting paths with Dijkstra on reduced costs.
///
/// Sources are joined through a super-source whose arcs carry the supplies.
/// Arc costs must be nonnegative, so zero initial potentials are valid.
/// Heap ties go to the lowest node index, making the result reproducible.
pub fn min_cost_max_flow(net: &FlowNetwork) -> FlowResult {
    assert!(net.arcs.iter().all(|a| a.cost >= 0 && a.capacity >= 0), "costs and capacities must be nonnegative");
    let super_source = net.nodes.len();
    let nv = net.nodes.len() + 1;
    let mut g = Residual { head: Vec::new(), cap: Vec::new(), cost: Vec::new(), adj: vec![Vec::new(); nv] };
    let arc_ids: Vec<usize> = net.arcs.iter().map(|a| g.add(a.from, a.to, a.capacity, a.cost)).collect();
    for &(node, supply) in &net.supplies {
        g.add(super_source, node, supply, 0);
    }

    let mut potential = vec![0i64; nv];
    let mut flow_value = 0;
    let mut total_cost = 0;
    loop {
        let mut dist = vec![i64::MAX; nv];
        let mut via = vec![usize::MAX; nv];
        let mut heap = BinaryHeap::new();
        dist[super_source] = 0;
        heap.push(Reverse((0i64, super_source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &g.adj[u] {
                if g.cap[e] <= 0 {
                    continue;
                }
                let v = g.head[e];
                let nd = d + g.cost[e] + potential[u] - potential[v];
                if nd < dist[v] {
                    dist[v] = nd;
                    via[v] = e;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[net.terminal] == i64::MAX {
            break;
        }
        for v in 0..nv {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = i64::MAX;
        let mut v = net.terminal;
        while v != super_source {
            let e = via[v];
            push = push.min(g.cap[e]);
            v = g.head[e ^ 1];
        }
        let mut v = net.terminal;
        while v != super_source {
            let e = via[v];
            g.cap[e] -= push;
            g.cap[e ^ 1] += push;
            total_cost += push * g.cost[e];
            v = g.head[e ^ 1];
        }
        flow_value += push;
    }

    let arc_flows = arc_ids.iter().map(|&e| g.cap[e ^ 1]).collect();
    FlowResult { flow_value, total_cost, arc_flows }
}

pub(crate) fn solve_with_classes(instance: &Instance, scenario: &Scenario, classes: &[Vec<ItemRef>]) -> Result<RisSolution> {
    let net = build_network(instance, scenario, classes)?;
    let result = min_cost_max_flow(&net);
    if result.flow_value < net.total_supply() {
        return Ok(RisSolution::Infeasible);
    }
    // The first n arcs are source -> item in flat item order.
    let items = (0..instance.n_items()).filter(|&j| result.arc_flows[j] == 1);
    Ok(RisSolution::Optimal { selection: Selection::from_flat(instance, items), value: result.total_cost })
}

/// Solves a clique-structured (or unconstrained) instance exactly in
/// polynomial time.
pub fn solve_via_flow(instance: &Instance, scenario: &Scenario) -> Result<RisSolution> {
    match classify(instance) {
        StructureClass::Unconstrained => {
            let singletons: Vec<Vec<ItemRef>> = (0..instance.n_items()).map(|j| vec![instance.item_ref(j)]).collect();
            solve_with_classes(instance, scenario, &singletons)
        }
        StructureClass::CliqueComponents { classes } => solve_with_classes(instance, scenario, &classes),
        StructureClass::General => Err(Error::NotCliqueStructured(
            "some conflict component is not a clique".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::{brute_force_ris, solve_greedy};
    use crate::fixtures::{transitive_three_sets, unconstrained};
    use crate::model::{is_feasible, CostInterval, ItemSet};

    fn classes_of(inst: &Instance) -> Vec<Vec<ItemRef>> {
        match classify(inst) {
            StructureClass::CliqueComponents { classes } => classes,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn network_shape_for_triangle_plus_edge() {
        let inst = transitive_three_sets(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let net = build_network(&inst, &Scenario::lower(&inst), &classes_of(&inst)).unwrap();
        let count = |f: fn(&NodeKind) -> bool| net.nodes.iter().filter(|k| f(k)).count();
        assert_eq!(count(|k| matches!(k, NodeKind::Source { .. })), 3);
        assert_eq!(count(|k| matches!(k, NodeKind::Item(_))), 9);
        assert_eq!(count(|k| matches!(k, NodeKind::Class(_))), 6);
        assert_eq!(count(|k| matches!(k, NodeKind::Terminal)), 1);
        assert_eq!(net.arcs.len(), 24);
        assert_eq!(net.total_supply(), 6);
        assert!(net.to_dot().starts_with("digraph"));
    }

    #[test]
    fn singletons_without_pairs() {
        let iv = CostInterval::fixed;
        let inst = unconstrained(&[&[iv(1), iv(2)]], &[1]);
        let singletons = vec![vec![ItemRef::new(0, 0)], vec![ItemRef::new(0, 1)]];
        let net = build_network(&inst, &Scenario::lower(&inst), &singletons).unwrap();
        assert_eq!(net.nodes.len(), 1 + 2 + 2 + 1);
    }

    #[test]
    fn pair_shares_a_class_node() {
        let sets = vec![ItemSet::new(1, vec![CostInterval::fixed(1)]), ItemSet::new(1, vec![CostInterval::fixed(1)])];
        let (a, b) = (ItemRef::new(0, 0), ItemRef::new(1, 0));
        let inst = Instance::new(sets, [(a, b)]).unwrap();
        let classes = classes_of(&inst);
        assert_eq!(classes, vec![vec![a, b]]);
        let net = build_network(&inst, &Scenario::lower(&inst), &classes).unwrap();
        assert_eq!(net.arcs.iter().filter(|arc| arc.to == 4).count(), 2);
    }

    #[test]
    fn rejects_non_clique_partition() {
        let inst = transitive_three_sets(&[[0; 3]; 3]);
        let mut classes = classes_of(&inst);
        // fold the singleton (0,2) into the {(0,1),(1,1)} class
        let single = classes.remove(2);
        classes[1].extend(single);
        assert!(build_network(&inst, &Scenario::lower(&inst), &classes).is_err());
    }

    #[test]
    fn zero_supply_network() {
        let net = FlowNetwork { nodes: vec![NodeKind::Source { set: 0 }, NodeKind::Terminal], arcs: vec![Arc { from: 0, to: 1, capacity: 1, cost: 3 }], supplies: vec![(0, 0)], terminal: 1 };
        let res = min_cost_max_flow(&net);
        assert_eq!((res.flow_value, res.total_cost), (0, 0));
    }

    #[test]
    fn matches_greedy_and_brute_force() {
        let iv = CostInterval::fixed;
        let inst = unconstrained(&[&[iv(4), iv(2), iv(9)], &[iv(3), iv(1)]], &[2, 1]);
        let sc = Scenario::lower(&inst);
        assert_eq!(solve_via_flow(&inst, &sc).unwrap().value(), solve_greedy(&inst, &sc).value());

        let inst = transitive_three_sets(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let sc = Scenario::lower(&inst);
        let sol = solve_via_flow(&inst, &sc).unwrap();
        assert_eq!(sol.value(), brute_force_ris(&inst, &sc).unwrap().value());
        assert!(is_feasible(&inst, sol.selection().unwrap()));
    }

    #[test]
    fn class_capacity_blocks_quota() {
        // Both items of set 0 conflict with each other and p = 2.
        let sets = vec![ItemSet::new(2, vec![CostInterval::fixed(1); 2])];
        let inst = Instance::new(sets, [(ItemRef::new(0, 0), ItemRef::new(0, 1))]).unwrap();
        assert_eq!(solve_via_flow(&inst, &Scenario::lower(&inst)).unwrap(), RisSolution::Infeasible);
    }

    #[test]
    fn general_instances_are_rejected() {
        let sets = (0..3).map(|_| ItemSet::new(1, vec![CostInterval::fixed(1); 2])).collect();
        let r = ItemRef::new;
        let inst = Instance::new(sets, [(r(0, 0), r(1, 0)), (r(1, 0), r(2, 0))]).unwrap();
        assert!(solve_via_flow(&inst, &Scenario::lower(&inst)).is_err());
    }
}
