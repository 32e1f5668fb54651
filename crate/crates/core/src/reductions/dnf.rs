use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CostInterval, Instance, ItemRef, ItemSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Var {
    /// Existentially quantified, 0-based.
    X(usize),
    /// Universally quantified, 0-based.
    Y(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    pub var: Var,
    pub positive: bool,
}

impl Literal {
    pub fn x(index: usize, positive: bool) -> Self {
        Self { var: Var::X(index), positive }
    }

    pub fn y(index: usize, positive: bool) -> Self {
        Self { var: Var::Y(index), positive }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "-" };
        match self.var {
            Var::X(i) => write!(f, "{sign}x{}", i + 1),
            Var::Y(i) => write!(f, "{sign}y{}", i + 1),
        }
    }
}

/// `∃x ∀y`: a disjunction of 3-literal conjunctions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantifiedDnf {
    x_vars: usize,
    y_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl QuantifiedDnf {
    /// Rejects out-of-range variables and clauses that mention a variable
    /// twice.
    pub fn new(x_vars: usize, y_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (c, clause) in clauses.iter().enumerate() {
            for (i, lit) in clause.iter().enumerate() {
                let in_range = match lit.var {
                    Var::X(v) => v < x_vars,
                    Var::Y(v) => v < y_vars,
                };
                if !in_range {
                    return Err(Error::Params(format!("clause {c}: literal {lit} out of range")));
                }
                if clause[..i].iter().any(|other| other.var == lit.var) {
                    return Err(Error::Params(format!("clause {c}: variable of {lit} repeated")));
                }
            }
        }
        Ok(Self { x_vars, y_vars, clauses })
    }

    pub fn x_vars(&self) -> usize {
        self.x_vars
    }

    pub fn y_vars(&self) -> usize {
        self.y_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// One clause per line, literals written `x3`, `-y1` or `+x2` with
    /// 1-based indices. Blank lines and lines starting with `#` or `c ` are
    /// skipped. An optional `p dnf <x_vars> <y_vars>` line fixes the variable
    /// counts; otherwise they are the largest indices used.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut clauses = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let bad = |why: &str| Error::Parse(format!("line {}: {why}: {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [] => continue,
                [first, ..] if first.starts_with('#') || *first == "c" => continue,
                ["p", "dnf", s, t] => {
                    let s = s.parse().map_err(|_| bad("bad count"))?;
                    let t = t.parse().map_err(|_| bad("bad count"))?;
                    declared = Some((s, t));
                }
                [a, b, c] => {
                    let lit = |tok: &str| parse_literal(tok).ok_or_else(|| bad("bad literal"));
                    clauses.push([lit(a)?, lit(b)?, lit(c)?]);
                }
                _ => return Err(bad("expected exactly three literals")),
            }
        }
        let (x_vars, y_vars) = declared.unwrap_or_else(|| {
            let top = |pick: fn(Var) -> Option<usize>| {
                clauses.iter().flatten().filter_map(|l| pick(l.var)).map(|i| i + 1).max().unwrap_or(0)
            };
            let xs = top(|v| if let Var::X(i) = v { Some(i) } else { None });
            let ys = top(|v| if let Var::Y(i) = v { Some(i) } else { None });
            (xs, ys)
        });
        Self::new(x_vars, y_vars, clauses)
    }
}

impl fmt::Display for QuantifiedDnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p dnf {} {}", self.x_vars, self.y_vars)?;
        for [a, b, c] in &self.clauses {
            writeln!(f, "{a} {b} {c}")?;
        }
        Ok(())
    }
}

fn parse_literal(tok: &str) -> Option<Literal> {
    let (positive, rest) = match tok.as_bytes().first()? {
        b'-' => (false, &tok[1..]),
        b'+' => (true, &tok[1..]),
        _ => (true, tok),
    };
    let index: usize = rest.get(1..)?.parse().ok()?;
    let index = index.checked_sub(1)?;
    match rest.as_bytes().first()? {
        b'x' => Some(Literal::x(index, positive)),
        b'y' => Some(Literal::y(index, positive)),
        _ => None,
    }
}

/// True iff some clause has all literals satisfied.
pub fn check_dnf(phi: &QuantifiedDnf, x: &[bool], y: &[bool]) -> bool {
    assert_eq!(x.len(), phi.x_vars, "x assignment length");
    assert_eq!(y.len(), phi.y_vars, "y assignment length");
    phi.clauses.iter().any(|clause| {
        clause.iter().all(|lit| {
            let value = match lit.var {
                Var::X(i) => x[i],
                Var::Y(i) => y[i],
            };
            value == lit.positive
        })
    })
}

fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    assert!(n < 24, "too many variables to enumerate");
    (0u32..1 << n).map(move |bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
}

/// `∃x ∀y φ(x, y)` by enumerating all assignments.
pub fn exists_forall(phi: &QuantifiedDnf) -> bool {
    assignments(phi.x_vars).any(|x| assignments(phi.y_vars).all(|y| check_dnf(phi, &x, &y)))
}

/// What a reduction item stands for. Assignments list `(variable index,
/// value)` sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ItemRole {
    /// The clause's unique satisfying assignment of its x-variables.
    X(Vec<(usize, bool)>),
    /// One assignment of the clause's y-variables that falsifies the clause.
    Y(Vec<(usize, bool)>),
    Special,
}

impl ItemRole {
    fn conflicts(&self, other: &ItemRole) -> bool {
        let clash = |a: &[(usize, bool)], b: &[(usize, bool)]| {
            a.iter().any(|(v, val)| b.iter().any(|(w, wal)| v == w && val != wal))
        };
        match (self, other) {
            (ItemRole::X(a), ItemRole::X(b)) | (ItemRole::Y(a), ItemRole::Y(b)) => clash(a, b),
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DnfReductionArtifacts {
    pub instance: Instance,
    pub b: i64,
    /// Yes-instances have min-max regret at most this.
    pub z: i64,
    /// `roles[set][item]`.
    pub roles: Vec<Vec<ItemRole>>,
}

/// The default gadget constant: one more than the number of clauses.
pub fn default_b(phi: &QuantifiedDnf) -> i64 {
    phi.clauses.len() as i64 + 1
}

/// Builds the interval instance whose min-max regret is at most
/// `(m-1)·b + m-1` exactly when `∃x ∀y φ` holds (`m` clauses, `b > m`).
///
/// Per clause, one set with quota 1 holding, in order: the X-item `[0,b]` if
/// the clause has x-literals; one Y-item `[0,b²]` per falsifying assignment
/// of its y-variables in binary counting order, the lowest-indexed variable
/// as most significant bit; the special item `[b+1,b+1]`. X-items (and
/// Y-items) of different sets are forbidden together when their assignments
/// disagree on a shared variable.
pub fn dnf_to_iris(phi: &QuantifiedDnf, b: i64) -> Result<DnfReductionArtifacts> {
    let m = phi.clauses.len() as i64;
    if m == 0 {
        return Err(Error::Params("formula has no clauses".into()));
    }
    if b <= m {
        return Err(Error::Params(format!("b must exceed the clause count {m}, got {b}")));
    }
    let mut roles = Vec::with_capacity(phi.clauses.len());
    for (c, clause) in phi.clauses.iter().enumerate() {
        let mut xs: Vec<(usize, bool)> = Vec::new();
        let mut ys: Vec<(usize, bool)> = Vec::new();
        for lit in clause {
            match lit.var {
                Var::X(i) => xs.push((i, lit.positive)),
                Var::Y(i) => ys.push((i, lit.positive)),
            }
        }
        if ys.is_empty() {
            return Err(Error::Params(format!("clause {c} has no y-variable")));
        }
        xs.sort_unstable();
        ys.sort_unstable();
        let mut set = Vec::new();
        if !xs.is_empty() {
            set.push(ItemRole::X(xs));
        }
        let t = ys.len();
        for bits in 0..1u32 << t {
            let assignment: Vec<(usize, bool)> =
                ys.iter().enumerate().map(|(k, &(v, _))| (v, bits >> (t - 1 - k) & 1 == 1)).collect();
            let falsifies = assignment.iter().zip(&ys).any(|((_, val), (_, want))| val != want);
            if falsifies {
                set.push(ItemRole::Y(assignment));
            }
        }
        set.push(ItemRole::Special);
        roles.push(set);
    }

    let interval = |role: &ItemRole| match role {
        ItemRole::X(_) => CostInterval::new(0, b),
        ItemRole::Y(_) => CostInterval::new(0, b * b),
        ItemRole::Special => CostInterval::fixed(b + 1),
    };
    let sets = roles.iter().map(|set| ItemSet::new(1, set.iter().map(interval).collect())).collect();
    let mut pairs = Vec::new();
    for (i, set_i) in roles.iter().enumerate() {
        for (j, set_j) in roles.iter().enumerate().skip(i + 1) {
            for (k, a) in set_i.iter().enumerate() {
                for (l, bb) in set_j.iter().enumerate() {
                    if a.conflicts(bb) {
                        pairs.push((ItemRef::new(i, k), ItemRef::new(j, l)));
                    }
                }
            }
        }
    }
    let instance = Instance::new(sets, pairs)?;
    Ok(DnfReductionArtifacts { instance, b, z: (m - 1) * b + m - 1, roles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::{brute_force_minmax_regret, RisDispatcher};
    use crate::model::{evaluate_regret, Selection};

    #[test]
    fn parse_and_print() {
        let phi = QuantifiedDnf::parse("# demo\nx1 +y1 -y2\n-x1 y1 y3\n").unwrap();
        assert_eq!((phi.x_vars(), phi.y_vars()), (1, 3));
        assert_eq!(phi.clauses()[0][2], Literal::y(1, false));
        assert_eq!(QuantifiedDnf::parse(&phi.to_string()).unwrap(), phi);
        assert!(QuantifiedDnf::parse("x1 y1\n").is_err());
        assert!(QuantifiedDnf::parse("x1 y1 z1\n").is_err());
        assert!(QuantifiedDnf::parse("x1 y1 -y1\n").is_err());
        assert!(QuantifiedDnf::parse("x0 y1 y2\n").is_err());
    }

    #[test]
    fn clause_gadgets() {
        // (x1 ∧ y1 ∧ ¬y2) and (¬x1 ∧ y1 ∧ y3).
        let phi = QuantifiedDnf::parse("x1 y1 -y2\n-x1 y1 y3\n").unwrap();
        let art = dnf_to_iris(&phi, 3).unwrap();
        let y = |a: bool, b: bool, v: usize| ItemRole::Y(vec![(0, a), (v, b)]);
        assert_eq!(art.roles[0], vec![ItemRole::X(vec![(0, true)]), y(false, false, 1), y(false, true, 1), y(true, true, 1), ItemRole::Special]);
        assert_eq!(art.roles[1][1..4], [y(false, false, 2), y(false, true, 2), y(true, false, 2)]);
        let inst = &art.instance;
        assert!(inst.conflicts(inst.flat(ItemRef::new(0, 0)), inst.flat(ItemRef::new(1, 0))));
        // Y 00 in the first set against Y 10 in the second.
        assert!(inst.conflicts(inst.flat(ItemRef::new(0, 1)), inst.flat(ItemRef::new(1, 3))));
        assert!(!inst.conflicts(inst.flat(ItemRef::new(0, 1)), inst.flat(ItemRef::new(1, 2))));
        assert_eq!(art.z, 3 + 1);
        assert!(inst.validate().is_empty());
    }

    #[test]
    fn rejects_bad_inputs() {
        let no_y = QuantifiedDnf::parse("x1 x2 -x3\n").unwrap();
        assert!(dnf_to_iris(&no_y, 5).is_err());
        let phi = QuantifiedDnf::parse("x1 y1 y2\n").unwrap();
        assert!(dnf_to_iris(&phi, 1).is_err());
    }

    #[test]
    fn single_clause_is_a_no_instance() {
        let phi = QuantifiedDnf::parse("x1 y1 y2\n").unwrap();
        assert!(!exists_forall(&phi));
        let art = dnf_to_iris(&phi, 5).unwrap();
        let regret = brute_force_minmax_regret(&art.instance).unwrap().regret;
        assert!(regret >= 5 && regret > art.z, "regret {regret}");
    }

    /// A false formula whose instance still reaches the threshold: the
    /// adversary cannot take the free X-items of sets 1 and 2 together, since
    /// they disagree on x3.
    #[test]
    fn false_formula_at_threshold() {
        let phi = QuantifiedDnf::parse("x1 -y1 x3\n-x3 -y1 x2\n-x3 -x2 y1\n").unwrap();
        assert!(!exists_forall(&phi));
        let art = dnf_to_iris(&phi, 4).unwrap();
        assert_eq!(art.z, 10);
        let x = Selection::new(vec![vec![2], vec![2], vec![0]]);
        let report = evaluate_regret(&art.instance, &x, &RisDispatcher::for_instance(&art.instance)).unwrap();
        assert_eq!(report.regret, 10);
        assert_eq!(brute_force_minmax_regret(&art.instance).unwrap().regret, 10);
    }

    #[test]
    fn evaluation() {
        let phi = QuantifiedDnf::parse("x1 y1 y2\n").unwrap();
        assert!(!check_dnf(&phi, &[false], &[false, false]));
        assert!(check_dnf(&phi, &[true], &[true, true]));
        let tautology = QuantifiedDnf::parse("x1 y1 y2\nx1 -y1 y2\nx1 y1 -y2\nx1 -y1 -y2\n").unwrap();
        assert!(exists_forall(&tautology));
    }
}
