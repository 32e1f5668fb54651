use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{CostInterval, Instance, ItemRef, ItemSet};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Duplicate edges are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Params(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Params(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Parses a DIMACS edge list: `c` comment lines, one `p edge <n> <m>`
    /// line, then `e <u> <v>` lines with 1-based vertices.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let bad = || Error::Parse(format!("line {}: {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [] | ["c", ..] => {}
                ["p", _, vertices, _] => n = Some(vertices.parse::<usize>().map_err(|_| bad())?),
                ["e", u, v] => {
                    let u: usize = u.parse().map_err(|_| bad())?;
                    let v: usize = v.parse().map_err(|_| bad())?;
                    if u == 0 || v == 0 {
                        return Err(bad());
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(bad()),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `p edge <n> <m>` line".into()))?;
        Self::new(n, edges)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// Size of a largest independent set, by enumerating vertex subsets.
/// Intended for small graphs (panics above 24 vertices).
pub fn independence_number(g: &Graph) -> usize {
    assert!(g.n() <= 24, "independence_number enumerates subsets; graph too large");
    let adj: Vec<u32> = (0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0, |m, v| m | 1 << v))
        .collect();
    (0u32..1 << g.n())
        .filter(|&s| (0..g.n()).all(|u| s & 1 << u == 0 || adj[u] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// One set per vertex holding a free vertex item and a unit-cost dummy, one to
/// pick; vertex items of adjacent vertices are forbidden together. The RIS
/// optimum is at most the returned threshold `n - k` exactly when `g` has an
/// independent set of size `k`.
pub fn independent_set_to_ris(g: &Graph, k: usize) -> Result<(Instance, i64)> {
    if k == 0 || k > g.n() {
        return Err(Error::Params(format!("k must be in 1..={}, got {k}", g.n())));
    }
    let sets = (0..g.n())
        .map(|_| ItemSet::new(1, vec![CostInterval::fixed(0), CostInterval::fixed(1)]))
        .collect();
    let pairs = g.edges().map(|(u, v)| (ItemRef::new(u, 0), ItemRef::new(v, 0)));
    let instance = Instance::new(sets, pairs)?;
    Ok((instance, (g.n() - k) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::solve_ris;
    use crate::model::Scenario;

    fn optimum(inst: &Instance) -> i64 {
        solve_ris(inst, &Scenario::lower(inst)).value().unwrap()
    }

    #[test]
    fn triangle() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (inst, t) = independent_set_to_ris(&g, 1).unwrap();
        assert_eq!((optimum(&inst), t), (2, 2));
        let (inst, t) = independent_set_to_ris(&g, 2).unwrap();
        assert_eq!((optimum(&inst), t), (2, 1));
    }

    #[test]
    fn edgeless() {
        let g = Graph::new(4, []).unwrap();
        let (inst, t) = independent_set_to_ris(&g, 4).unwrap();
        assert_eq!((optimum(&inst), t), (0, 0));
    }

    #[test]
    fn bad_graphs_and_k() {
        assert!(Graph::new(2, [(1, 1)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges().count(), 1);
        assert!(independent_set_to_ris(&g, 0).is_err());
        assert!(independent_set_to_ris(&g, 3).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c a path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
        let g = Graph::parse_dimacs(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(independence_number(&g), 2);
        assert_eq!(Graph::parse_dimacs(&g.to_dimacs()).unwrap(), g);
        assert!(Graph::parse_dimacs("e 1 2\n").is_err());
        assert!(Graph::parse_dimacs("p edge 2 1\ne 0 1\n").is_err());
    }
}
