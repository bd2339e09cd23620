//! The pipe dream congruence on a weak order interval `[e, omega]`.
//!
//! A permutation `pi <= omega` belongs to exactly one acyclic pipe dream of
//! `PD(omega)` as a linear extension. The resulting partition is a lattice
//! congruence whose quotient is the increasing flip graph on acyclic pipe
//! dreams.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::FinitePoset;
use crate::perm::Permutation;
use crate::pipedream::{enumerate, increasing_flip_graph, Cell, PipeDream};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepOrder {
    /// Rows bottom to top, each row west to east.
    #[default]
    Rows,
    /// Columns west to east, each column bottom to top.
    Columns,
}

fn require_below(pi: &Permutation, omega: &Permutation) -> Result<()> {
    if !pi.weak_leq(omega)? {
        return Err(Error::Precondition(format!("{pi} is not below {omega} in weak order")));
    }
    Ok(())
}

pub fn sweep(pi: &Permutation, omega: &Permutation) -> Result<PipeDream> {
    sweep_in_order(pi, omega, SweepOrder::Rows)
}

pub fn sweep_in_order(pi: &Permutation, omega: &Permutation, order: SweepOrder) -> Result<PipeDream> {
    require_below(pi, omega)?;
    let n = omega.n();
    let mut cells: Vec<Cell> = Vec::new();
    match order {
        SweepOrder::Rows => {
            for r in (1..=n).rev() {
                cells.extend((1..=n + 1 - r).map(|c| (r, c)));
            }
        }
        SweepOrder::Columns => {
            for c in 1..=n {
                cells.extend((1..=n + 1 - c).rev().map(|r| (r, c)));
            }
        }
    }
    let mut out_east = vec![vec![0; n + 2]; n + 2];
    let mut out_north = vec![vec![0; n + 2]; n + 2];
    let mut crosses = Vec::new();
    for (r, c) in cells {
        let i = if c == 1 { r } else { out_east[r][c - 1] };
        if r + c == n + 1 {
            out_north[r][c] = i;
            continue;
        }
        let j = out_north[r + 1][c];
        let cross = i < j
            && omega.pos(i) > omega.pos(j)
            && (pi.pos(i) > pi.pos(j) || c == omega.pos(j));
        if cross {
            out_east[r][c] = i;
            out_north[r][c] = j;
            crosses.push((r, c));
        } else {
            out_north[r][c] = i;
            out_east[r][c] = j;
        }
    }
    let pd = PipeDream::from_crosses(n, &crosses)?;
    if pd.omega() != omega {
        return Err(Error::MalformedGrid(format!("sweep produced {} instead of {omega}", pd.omega())));
    }
    Ok(pd)
}

/// Inserts the pipes `pi(1), pi(2), ...` one at a time, each as far
/// northwest as possible.
pub fn insert(pi: &Permutation, omega: &Permutation) -> Result<PipeDream> {
    require_below(pi, omega)?;
    let n = omega.n();
    // east-to-north corners of inserted pipes that no later pipe has covered
    let mut free: BTreeSet<Cell> = BTreeSet::new();
    let mut turns: HashSet<Cell> = HashSet::new();
    for t in 1..=n {
        let j = pi.at(t);
        let last_col = omega.pos(j);
        let mut stair: Vec<Cell> =
            free.iter().copied().filter(|&(r, c)| r <= j && c <= last_col).collect();
        stair.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let k = stair.len();
        let shaped = stair.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 < w[1].1)
            && k == omega.noninversion_count(j)
            && (k == 0 || (stair[0].0 < j && stair[k - 1].1 < last_col));
        if !shaped {
            return Err(Error::Precondition(format!(
                "free corners {stair:?} for pipe {j} do not form a staircase of length {}",
                omega.noninversion_count(j)
            )));
        }
        let mut row = j;
        for (idx, &corner) in stair.iter().enumerate().chain(std::iter::once((k, &(0, last_col)))) {
            let col = corner.1;
            let turn = (row, col);
            if row + col <= n {
                turns.insert(turn);
                free.insert(turn);
            }
            if idx < k {
                free.remove(&corner);
                turns.insert(corner);
                row = corner.0;
            }
        }
    }
    let crosses: Vec<Cell> =
        crate::pipedream::interior_cells(n).filter(|c| !turns.contains(c)).collect();
    let pd = PipeDream::from_crosses(n, &crosses)?;
    if pd.omega() != omega {
        return Err(Error::MalformedGrid(format!("insertion produced {} instead of {omega}", pd.omega())));
    }
    Ok(pd)
}

/// The interval `[e, omega]` with its blocks `L(P)`, one per acyclic pipe
/// dream. `blocks[b]` are indices into `interval` and belong to `dreams[b]`.
#[derive(Debug, Clone)]
pub struct PipeDreamPartition {
    pub interval: FinitePoset<Permutation>,
    pub dreams: Vec<PipeDream>,
    pub blocks: Vec<Vec<usize>>,
}

pub fn congruence_partition(omega: &Permutation, cap: usize) -> Result<PipeDreamPartition> {
    let interval = omega.weak_interval(cap)?;
    let mut by_dream: HashMap<PipeDream, Vec<usize>> = HashMap::new();
    for (i, pi) in interval.elements().iter().enumerate() {
        by_dream.entry(insert(pi, omega)?).or_default().push(i);
    }
    let mut dreams: Vec<PipeDream> = by_dream.keys().cloned().collect();
    dreams.sort();
    let blocks = dreams.iter().map(|d| by_dream[d].clone()).collect();
    Ok(PipeDreamPartition { interval, dreams, blocks })
}

fn check_position(word: &Permutation, position: usize) -> Result<()> {
    if position == 0 || position >= word.n() {
        return Err(Error::Precondition(format!("position {position} has no right neighbour in {word}")));
    }
    Ok(())
}

/// Whether the letters at `position` and `position + 1` may be exchanged
/// without leaving the class of `word`.
pub fn rewrite_adjacent(word: &Permutation, position: usize, omega: &Permutation) -> Result<bool> {
    check_position(word, position)?;
    require_below(word, omega)?;
    let (a, b) = (word.at(position), word.at(position + 1));
    let (i, j) = (a.min(b), a.max(b));
    if omega.pos(i) < omega.pos(j) {
        return Ok(false);
    }
    let prefix = &word.images()[..position - 1];
    let larger = prefix.iter().filter(|&&k| k > i).count();
    let left_of_j = prefix.iter().filter(|&&k| omega.pos(k) < omega.pos(j)).count();
    Ok(larger >= left_of_j)
}

/// The same test in the form counting only the relevant letters of the prefix.
pub fn rewrite_adjacent_reduced(word: &Permutation, position: usize, omega: &Permutation) -> Result<bool> {
    check_position(word, position)?;
    require_below(word, omega)?;
    let (a, b) = (word.at(position), word.at(position + 1));
    let (i, j) = (a.min(b), a.max(b));
    if omega.pos(i) < omega.pos(j) {
        return Ok(false);
    }
    let prefix = &word.images()[..position - 1];
    let lhs = prefix.iter().filter(|&&k| k < i && omega.pos(k) < omega.pos(j)).count();
    let rhs = prefix.iter().filter(|&&k| k > i && omega.pos(k) > omega.pos(j)).count();
    Ok(lhs <= rhs)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Blocks of an equivalence on `elements` generated by `pairs`, sorted.
fn classes_from_pairs(len: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..len).collect();
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..len {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort();
    blocks
}

/// Classes generated by the rewriting rule on `interval`.
pub fn rewrite_classes(interval: &FinitePoset<Permutation>, omega: &Permutation) -> Result<Vec<Vec<usize>>> {
    let mut pairs = Vec::new();
    for (x, pi) in interval.elements().iter().enumerate() {
        for t in 1..pi.n() {
            if rewrite_adjacent(pi, t, omega)? {
                let y = interval.index_of(&pi.swap_positions(t)).expect("swap stays in the interval");
                pairs.push((x, y));
            }
        }
    }
    Ok(classes_from_pairs(interval.len(), &pairs))
}

/// Classes of the sylvester rule `UjVikW = UjVkiW` (`i < j < k`) on `S_n`.
pub fn sylvester_classes(n: usize) -> (Vec<Permutation>, Vec<Vec<usize>>) {
    let all = Permutation::all(n);
    let index: HashMap<&Permutation, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut pairs = Vec::new();
    for (x, pi) in all.iter().enumerate() {
        for t in 1..n {
            let (a, b) = (pi.at(t), pi.at(t + 1));
            let (i, k) = (a.min(b), a.max(b));
            let witness = pi.images()[..t - 1].iter().any(|&j| i < j && j < k);
            if witness {
                pairs.push((x, index[&pi.swap_positions(t)]));
            }
        }
    }
    let blocks = classes_from_pairs(all.len(), &pairs);
    (all, blocks)
}

/// Weak order minimum and maximum of a block, which must be an interval.
pub fn class_extremes(interval: &FinitePoset<Permutation>, block: &[usize]) -> Result<(Permutation, Permutation)> {
    let preds = interval.order_predicates(block);
    if !preds.is_interval {
        return Err(Error::NotACongruence("block is not an interval".into()));
    }
    let lo = block.iter().copied().find(|&m| block.iter().all(|&z| interval.leq(m, z))).expect("interval");
    let hi = block.iter().copied().find(|&m| block.iter().all(|&z| interval.leq(z, m))).expect("interval");
    Ok((interval.element(lo).clone(), interval.element(hi).clone()))
}

/// Permutation whose value pair `(i, j)`, `i < j`, is inverted exactly when
/// `inverted(i, j)`; `None` if no permutation has that inversion set.
pub fn permutation_from_inversions(n: usize, inverted: impl Fn(usize, usize) -> bool) -> Option<Permutation> {
    // count the values that must come before each value
    let mut before = vec![0usize; n + 1];
    for i in 1..=n {
        for j in i + 1..=n {
            if inverted(i, j) {
                before[i] += 1;
            } else {
                before[j] += 1;
            }
        }
    }
    let mut images = vec![0; n];
    for v in 1..=n {
        if images[before[v]] != 0 {
            return None;
        }
        images[before[v]] = v;
    }
    let p = Permutation::new(images).ok()?;
    (1..=n).all(|i| (i + 1..=n).all(|j| p.is_inversion(i, j) == inverted(i, j))).then_some(p)
}

/// Extremes of `L(P)` read off the contact order: the minimum inverts
/// exactly the pairs `i < j` with `j` before `i` in the order, the maximum
/// keeps exactly the pairs with `i` before `j`.
pub fn extremes_from_contacts(p: &PipeDream) -> Result<(Permutation, Permutation)> {
    if !p.is_acyclic() {
        return Err(Error::Precondition("pipe dream is cyclic".into()));
    }
    let order = p.contact_graph().strict_order();
    let n = p.n();
    let lo = permutation_from_inversions(n, |i, j| order[j][i]);
    let hi = permutation_from_inversions(n, |i, j| !order[i][j]);
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(Error::Precondition("contact order does not give an interval".into())),
    }
}

/// Minimal in its class: no adjacent descent `j i` preceded by at least
/// `#{k <= i : omega^-1(k) < omega^-1(j)}` letters `k > i` with
/// `omega^-1(k) > omega^-1(j)`.
pub fn is_class_min_by_patterns(pi: &Permutation, omega: &Permutation) -> bool {
    !(1..pi.n()).any(|t| pi.at(t) > pi.at(t + 1) && pattern_at(pi, t, omega))
}

/// Maximal in its class: the same pattern on adjacent ascents `i j`.
pub fn is_class_max_by_patterns(pi: &Permutation, omega: &Permutation) -> bool {
    !(1..pi.n()).any(|t| pi.at(t) < pi.at(t + 1) && pattern_at(pi, t, omega))
}

fn pattern_at(pi: &Permutation, t: usize, omega: &Permutation) -> bool {
    let (a, b) = (pi.at(t), pi.at(t + 1));
    let (i, j) = (a.min(b), a.max(b));
    let needed = (1..=i).filter(|&k| omega.pos(k) < omega.pos(j)).count();
    let found = pi.images()[..t - 1].iter().filter(|&&k| k > i && omega.pos(k) > omega.pos(j)).count();
    found >= needed
}

/// Edges `i < j` of `G(omega)`: `(i, j)` is an inversion of omega and
/// `j - i <= #{k < i : omega^-1(k) < omega^-1(j)}`.
pub fn recoil_graph(omega: &Permutation) -> Vec<(usize, usize)> {
    let n = omega.n();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if omega.pos(i) > omega.pos(j) {
                let room = (1..i).filter(|&k| omega.pos(k) < omega.pos(j)).count();
                if j - i <= room {
                    edges.push((i, j));
                }
            }
        }
    }
    edges
}

/// An orientation of `G(omega)`: one `(from, to)` per edge, listed in the
/// order of `recoil_graph`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn is_acyclic(&self, n: usize) -> bool {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in &self.arcs {
            succ[a - 1].push(b - 1);
        }
        crate::lattice::topological_order(&succ).is_some()
    }
}

pub fn recoils(pi: &Permutation, omega: &Permutation) -> Result<Orientation> {
    require_below(pi, omega)?;
    let arcs = recoil_graph(omega)
        .into_iter()
        .map(|(i, j)| if pi.pos(i) < pi.pos(j) { (i, j) } else { (j, i) })
        .collect();
    Ok(Orientation { arcs })
}

pub fn canopy(p: &PipeDream) -> Result<Orientation> {
    if !p.is_acyclic() {
        return Err(Error::Precondition("canopy of a cyclic pipe dream".into()));
    }
    let order = p.contact_graph().strict_order();
    let mut arcs = Vec::new();
    for (i, j) in recoil_graph(p.omega()) {
        if order[i][j] {
            arcs.push((i, j));
        } else if order[j][i] {
            arcs.push((j, i));
        } else {
            return Err(Error::Precondition(format!("pipes {i} and {j} are incomparable")));
        }
    }
    Ok(Orientation { arcs })
}

/// All acyclic orientations of `G(omega)`.
pub fn acyclic_orientations(omega: &Permutation) -> Vec<Orientation> {
    let edges = recoil_graph(omega);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << edges.len()) {
        let arcs = edges
            .iter()
            .enumerate()
            .map(|(b, &(i, j))| if mask >> b & 1 == 0 { (i, j) } else { (j, i) })
            .collect();
        let o = Orientation { arcs };
        if o.is_acyclic(omega.n()) {
            out.push(o);
        }
    }
    out.sort();
    out
}

/// Partition of the interval, its congruence test, and the comparison of the
/// quotient with the increasing flip graph on acyclic pipe dreams.
pub fn verify_theorem_a(omega: &Permutation, cap: usize) -> Result<Report> {
    let mut report = Report::new(omega.to_string());
    let interval = omega.weak_interval(cap)?;
    let graph = increasing_flip_graph(omega, true, cap)?;
    let mut owner: Vec<Option<usize>> = vec![None; interval.len()];
    let mut blocks = Vec::with_capacity(graph.vertices.len());
    let mut partition_witness = serde_json::Value::Null;
    'dreams: for (b, p) in graph.vertices.iter().enumerate() {
        let mut block = Vec::new();
        for pi in p.linear_extensions(cap)? {
            let Some(x) = interval.index_of(&pi) else {
                partition_witness = json!({"outside": pi, "dream": p.to_json_value()});
                break 'dreams;
            };
            if let Some(other) = owner[x] {
                partition_witness = json!({"shared": pi, "dreams": [graph.vertices[other].to_json_value(), p.to_json_value()]});
                break 'dreams;
            }
            owner[x] = Some(b);
            block.push(x);
        }
        block.sort_unstable();
        blocks.push(block);
    }
    if partition_witness.is_null() {
        if let Some(x) = owner.iter().position(Option::is_none) {
            partition_witness = json!({"uncovered": interval.element(x)});
        }
    }
    let partition_ok = partition_witness.is_null();
    report.push("partition", partition_ok, partition_witness);
    if !partition_ok {
        return Ok(report);
    }
    let congruence = interval.is_congruence(&blocks)?;
    let witness = match &congruence.witness {
        None => serde_json::Value::Null,
        Some(w) => json!(format!("{w:?}")),
    };
    report.push("congruence", congruence.is_congruence, witness);
    if !congruence.is_congruence {
        return Ok(report);
    }
    let quotient = interval.quotient(&blocks)?;
    let hasse: BTreeSet<(usize, usize)> = quotient.covers().iter().copied().collect();
    let flips: BTreeSet<(usize, usize)> = graph.arcs.iter().copied().collect();
    let diff: Vec<_> = hasse.symmetric_difference(&flips).copied().collect();
    let witness = match diff.first() {
        None => serde_json::Value::Null,
        Some(&(a, b)) => json!({
            "in_quotient": hasse.contains(&(a, b)),
            "lower": graph.vertices[a].to_json_value(),
            "upper": graph.vertices[b].to_json_value(),
        }),
    };
    report.push("quotient_equals_flip_graph", diff.is_empty(), witness);
    Ok(report)
}

/// `insert` agrees with both sweep orders on every `pi <= omega`.
pub fn verify_algorithms(omega: &Permutation, cap: usize) -> Result<Report> {
    let mut report = Report::new(omega.to_string());
    let interval = omega.weak_interval(cap)?;
    let mut witness = serde_json::Value::Null;
    for pi in interval.elements() {
        let ins = insert(pi, omega)?;
        let rows = sweep_in_order(pi, omega, SweepOrder::Rows)?;
        let cols = sweep_in_order(pi, omega, SweepOrder::Columns)?;
        if ins != rows || rows != cols {
            witness = json!({"pi": pi, "insert": ins.to_json_value(), "rows": rows.to_json_value(), "columns": cols.to_json_value()});
            break;
        }
    }
    report.push("insert_equals_sweep", witness.is_null(), witness);
    Ok(report)
}

/// Classes of the rewriting rule equal the insertion classes, and the
/// pattern tests find exactly the class extremes.
pub fn verify_rewrite(omega: &Permutation, cap: usize) -> Result<Report> {
    let mut report = Report::new(omega.to_string());
    let part = congruence_partition(omega, cap)?;
    let mut expected: Vec<Vec<usize>> = part.blocks.iter().map(|b| {
        let mut b = b.clone();
        b.sort_unstable();
        b
    }).collect();
    expected.sort();
    let rewritten = rewrite_classes(&part.interval, omega)?;
    let witness = if rewritten == expected {
        serde_json::Value::Null
    } else {
        let bad = rewritten.iter().find(|b| !expected.contains(b)).or_else(|| rewritten.first());
        json!({"rewrite_class": bad.map(|b| b.iter().map(|&x| part.interval.element(x).to_string()).collect::<Vec<_>>())})
    };
    report.push("rewrite_closure", witness.is_null(), witness);
    let mut witness = serde_json::Value::Null;
    'blocks: for (b, block) in part.blocks.iter().enumerate() {
        let (lo, hi) = class_extremes(&part.interval, block)?;
        let contacts = extremes_from_contacts(&part.dreams[b])?;
        for &x in block {
            let pi = part.interval.element(x);
            if is_class_min_by_patterns(pi, omega) != (*pi == lo) || is_class_max_by_patterns(pi, omega) != (*pi == hi) {
                witness = json!({"pi": pi, "class_min": lo, "class_max": hi});
                break 'blocks;
            }
        }
        if contacts != (lo.clone(), hi.clone()) {
            witness = json!({"dream": part.dreams[b].to_json_value(), "class_min": lo, "class_max": hi});
            break;
        }
    }
    report.push("pattern_extremes", witness.is_null(), witness);
    Ok(report)
}

/// `rec(pi | omega) = can(ins(pi | omega))` for every `pi <= omega`.
pub fn verify_canopy(omega: &Permutation, cap: usize) -> Result<Report> {
    let mut report = Report::new(omega.to_string());
    let interval = omega.weak_interval(cap)?;
    let mut witness = serde_json::Value::Null;
    for pi in interval.elements() {
        let rec = recoils(pi, omega)?;
        let can = canopy(&insert(pi, omega)?)?;
        if rec != can {
            witness = json!({"pi": pi, "recoils": rec, "canopy": can});
            break;
        }
    }
    report.push("recoils_equal_canopy", witness.is_null(), witness);
    Ok(report)
}

/// Every pipe dream of `PD(0 omega)` is acyclic.
pub fn nu_acyclicity(omega: &Permutation, cap: usize) -> Result<bool> {
    Ok(enumerate(&omega.zero_prepended(), false, cap)?.iter().all(PipeDream::is_acyclic))
}

/// First cyclic pipe dream of `PD(0 omega)`, if any.
pub fn nu_cyclic_witness(omega: &Permutation, cap: usize) -> Result<Option<PipeDream>> {
    Ok(enumerate(&omega.zero_prepended(), false, cap)?.into_iter().find(|p| !p.is_acyclic()))
}

/// Comparing acyclic pipe dreams through all of `PD(omega)` versus only
/// through acyclic ones.
#[derive(Debug, Clone)]
pub struct RestrictionComparison {
    pub induced: FinitePoset<PipeDream>,
    pub closure: FinitePoset<PipeDream>,
    /// Pairs `P < P'` in the induced order that the acyclic closure misses.
    pub missing: Vec<(PipeDream, PipeDream)>,
}

pub fn restriction_comparison(omega: &Permutation, cap: usize) -> Result<RestrictionComparison> {
    let full = increasing_flip_graph(omega, false, cap)?.poset()?;
    let acyclic = increasing_flip_graph(omega, true, cap)?;
    let closure = acyclic.poset()?;
    let ids: Vec<usize> =
        acyclic.vertices.iter().map(|p| full.index_of(p).expect("acyclic dreams are dreams")).collect();
    let mut arcs = Vec::new();
    let mut missing = Vec::new();
    for (a, &fa) in ids.iter().enumerate() {
        for (b, &fb) in ids.iter().enumerate() {
            if a != b && full.leq(fa, fb) {
                arcs.push((a, b));
                if !closure.leq(a, b) {
                    missing.push((acyclic.vertices[a].clone(), acyclic.vertices[b].clone()));
                }
            }
        }
    }
    let induced = FinitePoset::from_relation(acyclic.vertices.clone(), &arcs)?;
    Ok(RestrictionComparison { induced, closure, missing })
}
