//! Reduced pipe dreams on the staircase shape.
//!
//! Cell `(r, c)` with `r + c <= n` is a cross or an elbow; the cells with
//! `r + c = n + 1` are half elbows that only turn one pipe north. Pipe `p`
//! enters west of row `p` and leaves north of column `omega^-1(p)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{topological_order, FinitePoset};
use crate::perm::Permutation;

pub type Cell = (usize, usize);

#[derive(Clone)]
pub struct PipeDream {
    n: usize,
    cross: Vec<bool>,
    omega: Permutation,
}

/// Which pipe enters each cell from the west and from the south.
#[derive(Debug, Clone)]
pub struct Tracing {
    west: Vec<Vec<usize>>,
    south: Vec<Vec<usize>>,
    top: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heading {
    East,
    North,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipePath {
    pub pipe: usize,
    /// Cells visited with the heading the pipe had when entering them.
    pub steps: Vec<(Cell, Heading)>,
    pub exit_column: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PipeStats {
    /// South-to-east turns.
    pub se_elbows: usize,
    /// East-to-north turns, including the final half elbow.
    pub nw_elbows: usize,
    pub vertical_crossings: usize,
    pub horizontal_crossings: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cell: Cell,
}

/// One arc per interior elbow, from its NW pipe to its SE pipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactGraph {
    pub n: usize,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlipMove {
    pub contact: Cell,
    pub crossing: Cell,
    pub increasing: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonForm {
    n: usize,
    omega: String,
    cross: Vec<[usize; 2]>,
}

impl Serialize for PipeDream {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.json_form().serialize(s)
    }
}

fn cell_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn offset(n: usize, r: usize) -> usize {
    // rows 1..r-1 hold n-1, n-2, ... cells
    (r - 1) * n - (r - 1) * r / 2
}

fn index(n: usize, (r, c): Cell) -> usize {
    offset(n, r) + c - 1
}

/// Interior cells in row-major order.
pub fn interior_cells(n: usize) -> impl Iterator<Item = Cell> {
    (1..n).flat_map(move |r| (1..=n - r).map(move |c| (r, c)))
}

/// Traces a grid given as a cross mask in row-major interior order.
fn trace_mask(n: usize, cross: &[bool]) -> Tracing {
    let mut west = vec![vec![0; n + 2]; n + 2];
    let mut south = vec![vec![0; n + 2]; n + 2];
    let mut out_east = vec![vec![0; n + 2]; n + 2];
    let mut out_north = vec![vec![0; n + 2]; n + 2];
    for r in (1..=n).rev() {
        for c in 1..=n + 1 - r {
            let w = if c == 1 { r } else { out_east[r][c - 1] };
            let s = if r + c == n + 1 { 0 } else { out_north[r + 1][c] };
            west[r][c] = w;
            south[r][c] = s;
            if r + c == n + 1 {
                out_north[r][c] = w;
            } else if cross[index(n, (r, c))] {
                out_east[r][c] = w;
                out_north[r][c] = s;
            } else {
                out_north[r][c] = w;
                out_east[r][c] = s;
            }
        }
    }
    let top = (0..=n).map(|c| if c == 0 { 0 } else { out_north[1][c] }).collect();
    Tracing { west, south, top }
}

impl Tracing {
    /// `(west pipe, south pipe)`; the south pipe is 0 on the boundary.
    pub fn pipes_at(&self, (r, c): Cell) -> (usize, usize) {
        (self.west[r][c], self.south[r][c])
    }

    /// Pipe leaving north of column `c`.
    pub fn exiting(&self, c: usize) -> usize {
        self.top[c]
    }

    fn exit_permutation(&self) -> Permutation {
        Permutation::new(self.top[1..].to_vec()).expect("tracing yields a bijection")
    }
}

impl PipeDream {
    /// Builds a reduced pipe dream from its crossing cells.
    pub fn from_crosses(n: usize, crosses: &[Cell]) -> Result<Self> {
        let mut mask = vec![false; cell_count(n)];
        for &(r, c) in crosses {
            if r == 0 || c == 0 || r + c > n {
                return Err(Error::MalformedGrid(format!("cell ({r},{c}) outside the shape for n={n}")));
            }
            mask[index(n, (r, c))] = true;
        }
        Self::from_mask(n, mask)
    }

    pub(crate) fn from_mask(n: usize, cross: Vec<bool>) -> Result<Self> {
        if n == 0 || cross.len() != cell_count(n) {
            return Err(Error::MalformedGrid(format!("{} cells for n={n}", cross.len())));
        }
        let t = trace_mask(n, &cross);
        let omega = t.exit_permutation();
        let crossings = cross.iter().filter(|&&x| x).count();
        if crossings != omega.length() {
            return Err(Error::MalformedGrid(format!(
                "{crossings} crossings but exit permutation {omega} has length {}",
                omega.length()
            )));
        }
        Ok(Self { n, cross, omega })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Permutation {
        &self.omega
    }

    pub fn is_cross(&self, cell: Cell) -> bool {
        self.cross[index(self.n, cell)]
    }

    pub fn cross_cells(&self) -> Vec<Cell> {
        interior_cells(self.n).filter(|&x| self.is_cross(x)).collect()
    }

    pub fn elbow_cells(&self) -> Vec<Cell> {
        interior_cells(self.n).filter(|&x| !self.is_cross(x)).collect()
    }

    pub fn trace(&self) -> Tracing {
        trace_mask(self.n, &self.cross)
    }

    pub fn trace_pipes(&self) -> Vec<PipePath> {
        let n = self.n;
        let mut paths = Vec::with_capacity(n);
        for p in 1..=n {
            let (mut r, mut c, mut h) = (p, 1, Heading::East);
            let mut steps = Vec::new();
            loop {
                steps.push(((r, c), h));
                let turn = r + c == n + 1 || !self.is_cross((r, c));
                let out = match (turn, h) {
                    (false, h) => h,
                    (true, Heading::East) => Heading::North,
                    (true, Heading::North) => Heading::East,
                };
                match out {
                    Heading::East => c += 1,
                    Heading::North => {
                        if r == 1 {
                            break;
                        }
                        r -= 1;
                    }
                }
                h = out;
            }
            paths.push(PipePath { pipe: p, steps, exit_column: c });
        }
        paths
    }

    pub fn pipe_statistics(&self) -> Vec<PipeStats> {
        let n = self.n;
        let t = self.trace();
        let mut stats = vec![PipeStats::default(); n + 1];
        for r in 1..=n {
            for c in 1..=n + 1 - r {
                let (w, s) = t.pipes_at((r, c));
                if r + c == n + 1 {
                    stats[w].nw_elbows += 1;
                } else if self.is_cross((r, c)) {
                    stats[w].horizontal_crossings += 1;
                    stats[s].vertical_crossings += 1;
                } else {
                    stats[w].nw_elbows += 1;
                    stats[s].se_elbows += 1;
                }
            }
        }
        stats.remove(0);
        stats
    }

    pub fn validate(&self) -> Validation {
        validate_grid(self.n, &self.cross_cells(), &self.omega)
    }

    pub fn contact_graph(&self) -> ContactGraph {
        let t = self.trace();
        let arcs = self
            .elbow_cells()
            .into_iter()
            .map(|cell| {
                let (w, s) = t.pipes_at(cell);
                Arc { from: w, to: s, cell }
            })
            .collect();
        ContactGraph { n: self.n, arcs }
    }

    pub fn is_acyclic(&self) -> bool {
        self.contact_graph().is_acyclic()
    }

    pub fn linear_extensions(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.contact_graph().linear_extensions(cap)
    }

    /// Crossing cell of every crossing pair `(i, j)`, `i < j`.
    pub fn crossing_cells(&self) -> HashMap<(usize, usize), Cell> {
        let t = self.trace();
        self.cross_cells()
            .into_iter()
            .map(|cell| {
                let (w, s) = t.pipes_at(cell);
                ((w.min(s), w.max(s)), cell)
            })
            .collect()
    }

    pub fn flippable_contacts(&self) -> Vec<FlipMove> {
        let t = self.trace();
        let crossings = self.crossing_cells();
        let mut out = Vec::new();
        for contact in self.elbow_cells() {
            let (w, s) = t.pipes_at(contact);
            if let Some(&crossing) = crossings.get(&(w.min(s), w.max(s))) {
                let increasing = contact.0 >= crossing.0 && contact.1 <= crossing.1;
                out.push(FlipMove { contact, crossing, increasing });
            }
        }
        out
    }

    pub fn flip(&self, contact: Cell, crossing: Cell) -> Result<Self> {
        let legal = self
            .flippable_contacts()
            .iter()
            .any(|m| m.contact == contact && m.crossing == crossing);
        if !legal {
            return Err(Error::NotFlippable(format!("contact {contact:?} with crossing {crossing:?}")));
        }
        let mut cross = self.cross.clone();
        cross[index(self.n, contact)] = true;
        cross[index(self.n, crossing)] = false;
        let next = Self::from_mask(self.n, cross)?;
        debug_assert_eq!(next.omega, self.omega);
        Ok(next)
    }

    /// Neighbours through increasing flips.
    pub fn increasing_flips(&self) -> Vec<Self> {
        self.flippable_contacts()
            .into_iter()
            .filter(|m| m.increasing)
            .map(|m| self.flip(m.contact, m.crossing).expect("listed flip"))
            .collect()
    }

    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        for r in 1..self.n {
            for c in 1..=self.n - r {
                s.push(if self.is_cross((r, c)) { '+' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_ascii(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = rows.len() + 1;
        let mut crosses = Vec::new();
        for (r0, row) in rows.iter().enumerate() {
            let r = r0 + 1;
            if row.chars().count() != n - r {
                return Err(Error::MalformedGrid(format!("row {r} has {} cells, expected {}", row.len(), n - r)));
            }
            for (c0, ch) in row.chars().enumerate() {
                match ch {
                    '+' => crosses.push((r, c0 + 1)),
                    '.' => {}
                    other => return Err(Error::Parse(format!("unexpected {other:?} in row {r}"))),
                }
            }
        }
        Self::from_crosses(n, &crosses)
    }

    fn json_form(&self) -> JsonForm {
        JsonForm {
            n: self.n,
            omega: self.omega.to_string(),
            cross: self.cross_cells().into_iter().map(|(r, c)| [r, c]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_form()).expect("json")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json_form()).expect("json")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let form: JsonForm = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let crosses: Vec<Cell> = form.cross.iter().map(|&[r, c]| (r, c)).collect();
        let pd = Self::from_crosses(form.n, &crosses)?;
        let omega: Permutation = form.omega.parse()?;
        if omega != pd.omega {
            return Err(Error::MalformedGrid(format!("declared omega {omega}, traced {}", pd.omega)));
        }
        Ok(pd)
    }
}

/// Checks a grid against a claimed exit permutation.
pub fn validate_grid(n: usize, crosses: &[Cell], omega: &Permutation) -> Validation {
    let mut diagnostics = Vec::new();
    if omega.n() != n {
        diagnostics.push(format!("omega has size {} but grid has {n} pipes", omega.n()));
        return Validation { valid: false, diagnostics };
    }
    let mut mask = vec![false; cell_count(n)];
    for &(r, c) in crosses {
        if r == 0 || c == 0 || r + c > n {
            diagnostics.push(format!("cell ({r},{c}) outside the shape"));
        } else {
            mask[index(n, (r, c))] = true;
        }
    }
    if !diagnostics.is_empty() {
        return Validation { valid: false, diagnostics };
    }
    let t = trace_mask(n, &mask);
    let traced = t.exit_permutation();
    if &traced != omega {
        diagnostics.push(format!("pipes exit in order {traced}, expected {omega}"));
    }
    let count = mask.iter().filter(|&&x| x).count();
    if count != omega.length() {
        diagnostics.push(format!("{count} crossings, expected {}", omega.length()));
    }
    let mut pairs = HashSet::new();
    for cell in interior_cells(n) {
        if mask[index(n, cell)] {
            let (w, s) = t.pipes_at(cell);
            if !pairs.insert((w.min(s), w.max(s))) {
                diagnostics.push(format!("pipes {} and {} cross twice", w.min(s), w.max(s)));
            }
        }
    }
    if diagnostics.is_empty() {
        let mut se = vec![0; n + 1];
        for cell in interior_cells(n) {
            if !mask[index(n, cell)] {
                se[t.pipes_at(cell).1] += 1;
            }
        }
        for (j, &count) in se.iter().enumerate().skip(1) {
            if count != omega.noninversion_count(j) {
                diagnostics.push(format!("pipe {j} has {count} south-east elbows, expected {}", omega.noninversion_count(j)));
            }
        }
    }
    Validation { valid: diagnostics.is_empty(), diagnostics }
}

impl ContactGraph {
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.n];
        for a in &self.arcs {
            succ[a.from - 1].push(a.to - 1);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        succ
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(&self.successors()).is_some()
    }

    /// `before[i][j]` iff there is a directed path from pipe `i` to pipe `j`
    /// (1-based, reflexive not included).
    pub fn strict_order(&self) -> Vec<Vec<bool>> {
        let n = self.n;
        let succ = self.successors();
        let mut reach = vec![vec![false; n + 1]; n + 1];
        for start in 0..n {
            let mut stack = succ[start].clone();
            while let Some(x) = stack.pop() {
                if !reach[start + 1][x + 1] {
                    reach[start + 1][x + 1] = true;
                    stack.extend(&succ[x]);
                }
            }
        }
        reach
    }

    /// All topological orders, lexicographically sorted. `pi(t)` is the t-th pipe.
    pub fn linear_extensions(&self, cap: usize) -> Result<Vec<Permutation>> {
        let n = self.n;
        let succ = self.successors();
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        extend(&succ, &mut indeg, &mut current, &mut out, cap)?;
        Ok(out)
    }
}

fn extend(
    succ: &[Vec<usize>],
    indeg: &mut [usize],
    current: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
    cap: usize,
) -> Result<()> {
    let n = succ.len();
    if current.len() == n {
        if out.len() == cap {
            return Err(Error::CapExceeded { what: "linear extensions", cap });
        }
        out.push(Permutation::new(current.iter().map(|x| x + 1).collect()).expect("order"));
        return Ok(());
    }
    for x in 0..n {
        if indeg[x] == 0 && !current.contains(&x) {
            for &y in &succ[x] {
                indeg[y] -= 1;
            }
            current.push(x);
            let r = extend(succ, indeg, current, out, cap);
            current.pop();
            for &y in &succ[x] {
                indeg[y] += 1;
            }
            r?;
        }
    }
    Ok(())
}

pub fn greedy(omega: &Permutation) -> PipeDream {
    crate::pdlattice::sweep(&Permutation::identity(omega.n()), omega).expect("e is below omega")
}

pub fn antigreedy(omega: &Permutation) -> PipeDream {
    crate::pdlattice::sweep(omega, omega).expect("omega is below itself")
}

/// All of `PD(omega)`, or only the acyclic ones, sorted by crossing cells.
pub fn enumerate(omega: &Permutation, acyclic_only: bool, cap: usize) -> Result<Vec<PipeDream>> {
    let start = greedy(omega);
    let mut seen: HashSet<PipeDream> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(p) = frontier.pop() {
        for q in p.increasing_flips() {
            if !seen.contains(&q) {
                if seen.len() == cap {
                    return Err(Error::CapExceeded { what: "pipe dreams", cap });
                }
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    let mut all: Vec<PipeDream> = seen.into_iter().filter(|p| !acyclic_only || p.is_acyclic()).collect();
    all.sort();
    Ok(all)
}

/// Increasing flip graph with vertices in canonical order.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub vertices: Vec<PipeDream>,
    pub arcs: Vec<(usize, usize)>,
}

pub fn increasing_flip_graph(omega: &Permutation, acyclic_only: bool, cap: usize) -> Result<FlipGraph> {
    let vertices = enumerate(omega, acyclic_only, cap)?;
    let index: HashMap<&PipeDream, usize> = vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut arcs = BTreeSet::new();
    for (i, p) in vertices.iter().enumerate() {
        for q in p.increasing_flips() {
            if let Some(&j) = index.get(&q) {
                arcs.insert((i, j));
            }
        }
    }
    Ok(FlipGraph { vertices, arcs: arcs.into_iter().collect() })
}

impl FlipGraph {
    /// The transitive closure as a poset.
    pub fn poset(&self) -> Result<FinitePoset<PipeDream>> {
        FinitePoset::from_relation(self.vertices.clone(), &self.arcs)
    }

    pub fn index_of(&self, p: &PipeDream) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    /// Labels vertices by their ASCII rows joined with `/`.
    pub fn to_dot(&self) -> Result<String> {
        Ok(self.poset()?.to_dot(|p| p.to_ascii().trim_end().replace('\n', "/")))
    }
}

/// Number of each relation in a poset of pipe dreams grouped by `omega`.
pub fn count_by_omega(dreams: &[PipeDream]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for p in dreams {
        *m.entry(p.omega.to_string()).or_insert(0) += 1;
    }
    m
}

impl PartialEq for PipeDream {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cross == other.cross
    }
}

impl Eq for PipeDream {}

impl Hash for PipeDream {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.cross.hash(state);
    }
}

impl PartialOrd for PipeDream {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PipeDream {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.cross_cells().cmp(&other.cross_cells()))
    }
}

impl std::fmt::Debug for PipeDream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PipeDream({}, crosses {:?})", self.omega, self.cross_cells())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Facet positions of the triangular word, read column by column from the
    /// west, each column bottom to top.
    fn fig1_left() -> PipeDream {
        let cells: Vec<Cell> = (1..7).flat_map(|c| (1..=7 - c).rev().map(move |r| (r, c))).collect();
        let contacts: Vec<Cell> = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 21].iter().map(|&k| cells[k - 1]).collect();
        let crosses: Vec<Cell> = interior_cells(7).filter(|c| !contacts.contains(c)).collect();
        PipeDream::from_crosses(7, &crosses).unwrap()
    }

    #[test]
    fn two_pipes() {
        let e = PipeDream::from_crosses(2, &[]).unwrap();
        assert_eq!(e.omega(), &p("12"));
        assert_eq!(e.contact_graph().arcs, vec![Arc { from: 1, to: 2, cell: (1, 1) }]);
        let s = PipeDream::from_crosses(2, &[(1, 1)]).unwrap();
        assert_eq!(s.omega(), &p("21"));
        assert!(s.contact_graph().arcs.is_empty());
    }

    #[test]
    fn flip_closure_matches_brute_force() {
        // every reduced filling of the n=5 shape is reached from its greedy source
        let n = 5;
        let cells: Vec<Cell> = interior_cells(n).collect();
        let mut brute: BTreeMap<Permutation, usize> = BTreeMap::new();
        let mut rejected = 0;
        for mask in 0u32..(1 << cells.len()) {
            let crosses: Vec<Cell> = (0..cells.len()).filter(|b| mask >> b & 1 == 1).map(|b| cells[b]).collect();
            match PipeDream::from_crosses(n, &crosses) {
                Ok(pd) => *brute.entry(pd.omega().clone()).or_default() += 1,
                Err(_) => rejected += 1,
            }
        }
        assert!(rejected > 0);
        for w in Permutation::all(n) {
            let count = enumerate(&w, false, 10_000).unwrap().len();
            assert_eq!(brute.get(&w).copied().unwrap_or(0), count, "{w}");
        }
        assert!(!validate_grid(3, &[(1, 1)], &p("123")).valid);
        assert!(!validate_grid(3, &[(1, 1), (1, 2)], &p("213")).valid);
    }

    #[test]
    fn fig1_exit_permutation() {
        let pd = fig1_left();
        assert_eq!(pd.omega(), &p("1365724"));
        assert_eq!(pd.cross_cells().len(), 8);
        assert!(pd.validate().valid);
        assert!(pd.is_acyclic());
    }

    #[test]
    fn ascii_and_json_round_trip() {
        for pd in enumerate(&p("2413"), false, 100).unwrap() {
            assert_eq!(PipeDream::from_ascii(&pd.to_ascii()).unwrap(), pd);
            assert_eq!(PipeDream::from_json(&pd.to_json()).unwrap(), pd);
        }
        let pd = PipeDream::from_crosses(4, &[(1, 2)]).unwrap();
        assert_eq!(pd.to_ascii(), ".+.\n..\n.\n");
        assert_eq!(pd.to_json(), r#"{"n":4,"omega":"1324","cross":[[1,2]]}"#);
    }

    #[test]
    fn elbow_counts_on_greedy() {
        for w in Permutation::all(5) {
            let g = greedy(&w);
            assert!(g.validate().valid, "{w}");
            for (j0, st) in g.pipe_statistics().iter().enumerate() {
                let j = j0 + 1;
                let nu = w.noninversion_count(j);
                assert_eq!(st.se_elbows, nu);
                assert_eq!(st.nw_elbows, nu + 1);
                assert_eq!(st.vertical_crossings, j - 1 - nu);
                assert_eq!(st.horizontal_crossings, w.pos(j) - 1 - nu);
            }
        }
    }

    #[test]
    fn paths_end_at_inverse_positions() {
        let w = p("31542");
        for pd in enumerate(&w, false, 1000).unwrap() {
            for path in pd.trace_pipes() {
                assert_eq!(path.exit_column, w.pos(path.pipe));
                assert_eq!(path.steps[0], ((path.pipe, 1), Heading::East));
                assert_eq!(path.steps.len(), path.pipe + w.pos(path.pipe) - 1);
            }
        }
    }

    #[test]
    fn greedy_and_antigreedy() {
        let e = p("1234");
        assert_eq!(greedy(&e), antigreedy(&e));
        assert!(greedy(&e).cross_cells().is_empty());
        for w in Permutation::all(4) {
            let g = greedy(&w);
            assert!(g.flippable_contacts().iter().all(|m| m.increasing));
            assert!(antigreedy(&w).flippable_contacts().iter().all(|m| !m.increasing));
            assert!(g.contact_graph().arcs.iter().all(|a| a.from < a.to));
        }
    }

    #[test]
    fn flips_are_involutions() {
        for pd in enumerate(&p("12543"), false, 1000).unwrap() {
            for m in pd.flippable_contacts() {
                let q = pd.flip(m.contact, m.crossing).unwrap();
                assert_eq!(q.omega(), pd.omega());
                assert_eq!(q.flip(m.crossing, m.contact).unwrap(), pd);
            }
        }
    }

    #[test]
    fn fig1_flip_on_pipes_four_and_five() {
        let pd = fig1_left();
        let t = pd.trace();
        let m = pd
            .flippable_contacts()
            .into_iter()
            .find(|m| m.contact == (4, 1))
            .expect("contact at (4,1)");
        assert_eq!(t.pipes_at((4, 1)), (4, 5));
        assert_eq!(m.contact, (4, 1));
        assert_eq!(m.crossing, (2, 4));
        assert!(m.increasing);
        assert!(pd.flip(m.contact, m.crossing).unwrap().is_acyclic());
    }

    #[test]
    fn linear_extensions_of_cyclic_graph_are_empty() {
        let g = ContactGraph {
            n: 2,
            arcs: vec![Arc { from: 1, to: 2, cell: (1, 1) }, Arc { from: 2, to: 1, cell: (1, 2) }],
        };
        assert!(g.linear_extensions(10).unwrap().is_empty());
    }

    #[test]
    fn extension_cap() {
        let e = PipeDream::from_crosses(4, &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]).unwrap();
        assert_eq!(e.linear_extensions(100).unwrap().len(), 24);
        assert!(e.linear_extensions(10).is_err());
    }
}
