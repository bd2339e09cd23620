//! Finite posets given by their cover relations, with lattice and congruence
//! checks, quotients and DOT export.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    above: OnceLock<Vec<FixedBitSet>>,
    below: OnceLock<Vec<FixedBitSet>>,
}

impl<T: Clone> Clone for FinitePoset<T> {
    fn clone(&self) -> Self {
        Self {
            elements: self.elements.clone(),
            index: self.index.clone(),
            covers: self.covers.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            above: self.above.clone(),
            below: self.below.clone(),
        }
    }
}

/// Outcome of [`FinitePoset::is_lattice`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub is_lattice: bool,
    /// `(kind, x, y)` where kind is "join" or "meet".
    pub witness: Option<(&'static str, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CongruenceViolation {
    NotAPartition,
    NotAnInterval { block: usize },
    DownProjection { lower: usize, upper: usize },
    UpProjection { lower: usize, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCheck {
    pub is_congruence: bool,
    pub witness: Option<CongruenceViolation>,
}

/// A partition of a poset together with the projections to block extremes.
#[derive(Debug, Clone)]
pub struct CongruencePartition {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
    pub down_proj: Vec<usize>,
    pub up_proj: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderPredicates {
    pub is_lower_set: bool,
    pub is_order_convex: bool,
    pub is_interval: bool,
}

impl<T: Clone + Eq + Hash> FinitePoset<T> {
    /// Builds a poset from any relation whose transitive closure is the order.
    /// Duplicate arcs and redundant arcs are dropped; a cycle is an error.
    pub fn from_relation(elements: Vec<T>, arcs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Precondition("duplicate poset element".into()));
            }
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in arcs {
            if a >= n || b >= n {
                return Err(Error::Precondition("arc endpoint out of range".into()));
            }
            if a == b {
                continue;
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let order = topological_order(&succ)
            .ok_or_else(|| Error::Precondition("relation has a directed cycle".into()))?;
        let above = reach(&succ, &order, n);
        let mut covers = Vec::new();
        for (a, next) in succ.iter().enumerate() {
            for &b in next {
                let redundant = next.iter().any(|&z| z != b && above[z].contains(b));
                if !redundant {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up[a].push(b);
            down[b].push(a);
        }
        let cell = OnceLock::new();
        let _ = cell.set(above);
        Ok(Self { elements, index, covers, up, down, above: cell, below: OnceLock::new() })
    }
}

impl<T> FinitePoset<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    fn above(&self) -> &[FixedBitSet] {
        self.above.get_or_init(|| {
            let order = topological_order(&self.up).expect("covers are acyclic");
            reach(&self.up, &order, self.len())
        })
    }

    fn below(&self) -> &[FixedBitSet] {
        self.below.get_or_init(|| {
            let order = topological_order(&self.down).expect("covers are acyclic");
            reach(&self.down, &order, self.len())
        })
    }

    /// `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above()[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.above()[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.below()[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    /// Length of the longest chain from a minimal element to each element.
    pub fn ranks(&self) -> Vec<usize> {
        let order = topological_order(&self.up).expect("covers are acyclic");
        let mut rank = vec![0; self.len()];
        for &x in &order {
            for &y in &self.up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        rank
    }

    /// The least element of an up-set, if it has one. Minimal elements of an
    /// up-set are those with no lower cover inside it.
    fn least_of_up_set(&self, set: &FixedBitSet) -> Option<usize> {
        let mut found = None;
        for z in set.ones() {
            if self.down[z].iter().all(|&w| !set.contains(w)) {
                if found.is_some() {
                    return None;
                }
                found = Some(z);
            }
        }
        found
    }

    fn greatest_of_down_set(&self, set: &FixedBitSet) -> Option<usize> {
        let mut found = None;
        for z in set.ones() {
            if self.up[z].iter().all(|&w| !set.contains(w)) {
                if found.is_some() {
                    return None;
                }
                found = Some(z);
            }
        }
        found
    }

    pub fn try_join(&self, x: usize, y: usize) -> Option<usize> {
        let mut u = self.above()[x].clone();
        u.intersect_with(&self.above()[y]);
        self.least_of_up_set(&u)
    }

    pub fn try_meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut d = self.below()[x].clone();
        d.intersect_with(&self.below()[y]);
        self.greatest_of_down_set(&d)
    }

    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        self.try_join(x, y).ok_or(Error::NotALattice { kind: "join", x, y })
    }

    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        self.try_meet(x, y).ok_or(Error::NotALattice { kind: "meet", x, y })
    }

    /// Every pair has a join and a meet. The witness is the first failing
    /// pair in index order, joins checked before meets.
    pub fn is_lattice(&self) -> LatticeCheck {
        let n = self.len();
        if n == 0 {
            return LatticeCheck { is_lattice: false, witness: None };
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.try_join(x, y).is_none() {
                    return LatticeCheck { is_lattice: false, witness: Some(("join", x, y)) };
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.try_meet(x, y).is_none() {
                    return LatticeCheck { is_lattice: false, witness: Some(("meet", x, y)) };
                }
            }
        }
        LatticeCheck { is_lattice: true, witness: None }
    }

    /// Builds block lookups and projections to the least and greatest
    /// element of each block. Blocks without a least or greatest element get
    /// no projection (the entry is `usize::MAX`).
    pub fn partition(&self, blocks: &[Vec<usize>]) -> Option<CongruencePartition> {
        let n = self.len();
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return None;
            }
            for &x in block {
                if x >= n || block_of[x] != usize::MAX {
                    return None;
                }
                block_of[x] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return None;
        }
        let mut down_proj = vec![usize::MAX; n];
        let mut up_proj = vec![usize::MAX; n];
        for block in blocks {
            let lo = block.iter().copied().find(|&m| block.iter().all(|&z| self.leq(m, z)));
            let hi = block.iter().copied().find(|&m| block.iter().all(|&z| self.leq(z, m)));
            for &x in block {
                if let Some(lo) = lo {
                    down_proj[x] = lo;
                }
                if let Some(hi) = hi {
                    up_proj[x] = hi;
                }
            }
        }
        Some(CongruencePartition { blocks: blocks.to_vec(), block_of, down_proj, up_proj })
    }

    /// Blocks are intervals and both projections preserve covers.
    pub fn is_congruence(&self, blocks: &[Vec<usize>]) -> Result<CongruenceCheck> {
        let lat = self.is_lattice();
        if let Some((kind, x, y)) = lat.witness {
            return Err(Error::NotALattice { kind, x, y });
        }
        let fail = |v| Ok(CongruenceCheck { is_congruence: false, witness: Some(v) });
        let Some(part) = self.partition(blocks) else {
            return fail(CongruenceViolation::NotAPartition);
        };
        for (b, block) in blocks.iter().enumerate() {
            let lo = part.down_proj[block[0]];
            let hi = part.up_proj[block[0]];
            if lo == usize::MAX || hi == usize::MAX {
                return fail(CongruenceViolation::NotAnInterval { block: b });
            }
            let mut iv = self.above()[lo].clone();
            iv.intersect_with(&self.below()[hi]);
            if iv.count_ones(..) != block.len() {
                return fail(CongruenceViolation::NotAnInterval { block: b });
            }
        }
        for &(x, y) in &self.covers {
            if !self.leq(part.down_proj[x], part.down_proj[y]) {
                return fail(CongruenceViolation::DownProjection { lower: x, upper: y });
            }
            if !self.leq(part.up_proj[x], part.up_proj[y]) {
                return fail(CongruenceViolation::UpProjection { lower: x, upper: y });
            }
        }
        Ok(CongruenceCheck { is_congruence: true, witness: None })
    }

    /// Quotient by a congruence; element `b` of the result is block `b`,
    /// ordered by comparing block minima.
    pub fn quotient(&self, blocks: &[Vec<usize>]) -> Result<FinitePoset<usize>> {
        let check = self.is_congruence(blocks)?;
        if let Some(w) = check.witness {
            return Err(Error::NotACongruence(format!("{w:?}")));
        }
        let part = self.partition(blocks).expect("checked above");
        let mins: Vec<usize> = blocks.iter().map(|b| part.down_proj[b[0]]).collect();
        let mut arcs = Vec::new();
        for (a, &ma) in mins.iter().enumerate() {
            for (b, &mb) in mins.iter().enumerate() {
                if a != b && self.leq(ma, mb) {
                    arcs.push((a, b));
                }
            }
        }
        FinitePoset::from_relation((0..blocks.len()).collect(), &arcs)
    }

    pub fn order_predicates(&self, subset: &[usize]) -> OrderPredicates {
        let n = self.len();
        let mut s = FixedBitSet::with_capacity(n);
        for &x in subset {
            s.insert(x);
        }
        let mut down = FixedBitSet::with_capacity(n);
        let mut up = FixedBitSet::with_capacity(n);
        for x in s.ones() {
            down.union_with(&self.below()[x]);
            up.union_with(&self.above()[x]);
        }
        let is_lower_set = down == s;
        let mut hull = down.clone();
        hull.intersect_with(&up);
        let is_order_convex = hull == s;
        let lo = s.ones().find(|&m| s.is_subset(&self.above()[m]));
        let hi = s.ones().find(|&m| s.is_subset(&self.below()[m]));
        let is_interval = match (lo, hi) {
            (Some(lo), Some(hi)) => {
                let mut iv = self.above()[lo].clone();
                iv.intersect_with(&self.below()[hi]);
                iv == s
            }
            _ => false,
        };
        OrderPredicates { is_lower_set, is_order_convex, is_interval }
    }

    /// Graphviz rendering, bottom to top, one `rank=same` group per rank.
    pub fn to_dot(&self, label: impl Fn(&T) -> String) -> String {
        let ranks = self.ranks();
        let top = ranks.iter().copied().max().unwrap_or(0);
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, e) in self.elements.iter().enumerate() {
            let text = label(e).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  n{i} [label=\"{text}\"];");
        }
        for r in 0..=top {
            let members: Vec<String> =
                (0..self.len()).filter(|&i| ranks[i] == r).map(|i| format!("n{i};")).collect();
            if !members.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {} }}", members.join(" "));
            }
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

impl<T: Eq + Hash> FinitePoset<T> {
    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Kahn's algorithm; `None` on a cycle.
pub(crate) fn topological_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Reflexive reachability sets along `succ`, given a topological order of it.
fn reach(succ: &[Vec<usize>], order: &[usize], n: usize) -> Vec<FixedBitSet> {
    let mut sets = vec![FixedBitSet::with_capacity(n); n];
    for &x in order.iter().rev() {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert(x);
        for &y in &succ[x] {
            s.union_with(&sets[y]);
        }
        sets[x] = s;
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset<usize> {
        let arcs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_relation((0..n).collect(), &arcs).unwrap()
    }

    fn hexagon() -> FinitePoset<usize> {
        // 0 < 1 < 3 < 5, 0 < 2 < 4 < 5
        FinitePoset::from_relation((0..6).collect(), &[(0, 1), (1, 3), (3, 5), (0, 2), (2, 4), (4, 5)])
            .unwrap()
    }

    #[test]
    fn transitive_arcs_are_dropped() {
        let p = FinitePoset::from_relation(vec![0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
    }

    #[test]
    fn cycle_rejected() {
        assert!(FinitePoset::from_relation(vec![0, 1], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn hexagon_is_lattice() {
        let p = hexagon();
        assert!(p.is_lattice().is_lattice);
        assert_eq!(p.join(1, 2).unwrap(), 5);
        assert_eq!(p.meet(3, 4).unwrap(), 0);
        assert_eq!(p.join(1, 1).unwrap(), 1);
        assert_eq!(p.meet(0, 4).unwrap(), 0);
    }

    #[test]
    fn bowtie_is_not_lattice() {
        // two minima below two maxima
        let p = FinitePoset::from_relation((0..4).collect(), &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let c = p.is_lattice();
        assert!(!c.is_lattice);
        assert_eq!(c.witness, Some(("join", 0, 1)));
    }

    #[test]
    fn congruence_on_hexagon() {
        let p = hexagon();
        let singletons: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
        assert!(p.is_congruence(&singletons).unwrap().is_congruence);
        // a single upper edge may be contracted on its own
        let side = vec![vec![0], vec![1, 3], vec![2], vec![4], vec![5]];
        assert!(p.is_congruence(&side).unwrap().is_congruence);
        // a bottom edge forces 2 and 5 together
        let bottom = vec![vec![0, 1], vec![2], vec![3], vec![4], vec![5]];
        assert!(!p.is_congruence(&bottom).unwrap().is_congruence);
        let good = vec![vec![0, 1], vec![2, 4], vec![3, 5]];
        assert!(!p.is_congruence(&good).unwrap().is_congruence);
        let good = vec![vec![0, 1, 3], vec![2, 4, 5]];
        assert!(p.is_congruence(&good).unwrap().is_congruence);
        let q = p.quotient(&good).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.covers(), &[(0, 1)]);
    }

    #[test]
    fn quotient_by_identity_is_isomorphic() {
        let p = hexagon();
        let singletons: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
        let q = p.quotient(&singletons).unwrap();
        assert_eq!(q.covers(), p.covers());
    }

    #[test]
    fn predicates() {
        let p = chain(4);
        let empty = p.order_predicates(&[]);
        assert!(empty.is_lower_set && empty.is_order_convex && !empty.is_interval);
        let all = p.order_predicates(&[0, 1, 2, 3]);
        assert!(all.is_lower_set && all.is_order_convex && all.is_interval);
        let gap = p.order_predicates(&[1, 3]);
        assert!(!gap.is_order_convex && !gap.is_interval);
        let mid = p.order_predicates(&[1, 2]);
        assert!(!mid.is_lower_set && mid.is_interval);
    }

    #[test]
    fn dot_has_every_cover() {
        let p = hexagon();
        let dot = p.to_dot(|x| x.to_string());
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.starts_with("digraph"));
    }
}
