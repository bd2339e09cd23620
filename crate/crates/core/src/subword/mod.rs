//! Subword complexes `SC(Q, w)` over finite Coxeter groups.

pub mod cone;
pub mod scan;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::coxeter::field::Q5;
use crate::coxeter::{CoxWord, CoxeterGroup, CoxeterSystem, GroupElement, RootId};
use crate::error::{Error, Result};
use crate::lattice::FinitePoset;
use crate::perm::Permutation;
use crate::pipedream::{Cell, PipeDream};
use crate::report::Report;

/// A set of 0-based word positions. Text form is the sorted 1-based list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Facet(u64);

impl Facet {
    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        Self(positions.into_iter().fold(0, |m, p| m | 1 << p))
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn positions(&self) -> Vec<usize> {
        (0..64).filter(|&k| self.contains(k)).collect()
    }

    fn with(self, k: usize) -> Self {
        Self(self.0 | 1 << k)
    }

    fn without(self, k: usize) -> Self {
        Self(self.0 & !(1 << k))
    }
}

impl Ord for Facet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.positions().cmp(&other.positions())
    }
}

impl PartialOrd for Facet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions().iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Facet {
    type Err = Error;

    /// Accepts `1,2,4`, `{1,2,4}` or an empty list.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() {
            return Ok(Self(0));
        }
        let mut mask = 0u64;
        for part in t.split(',') {
            match part.trim().parse::<usize>() {
                Ok(p) if (1..=64).contains(&p) => mask |= 1 << (p - 1),
                _ => return Err(Error::InvalidFacet(s.to_string())),
            }
        }
        Ok(Self(mask))
    }
}

impl Serialize for Facet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.positions().iter().map(|p| (p + 1).to_string()).collect();
        s.serialize_str(&parts.join(","))
    }
}

/// A flip `I \ {i} = J \ {j}`; positions are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flip {
    pub from: Facet,
    pub to: Facet,
    pub i: usize,
    pub j: usize,
    /// `r(I, i)`.
    pub root: RootId,
    pub increasing: bool,
}

/// The data `(W, Q, w)`.
#[derive(Debug, Clone)]
pub struct SubwordComplex {
    system: Arc<CoxeterSystem>,
    word: CoxWord,
    omega: GroupElement,
    omega_inv: u128,
    omega_len: usize,
}

impl SubwordComplex {
    pub fn new(system: Arc<CoxeterSystem>, word: CoxWord, omega: GroupElement) -> Result<Self> {
        if word.len() > 64 {
            return Err(Error::InvalidWord(format!("word of length {} exceeds 64", word.len())));
        }
        if let Some(&s) = word.0.iter().find(|&&s| s >= system.rank()) {
            return Err(Error::InvalidWord(format!("generator {} out of range", s + 1)));
        }
        let omega_inv = system.inv_mask(&omega);
        let omega_len = system.length(&omega);
        Ok(Self { system, word, omega, omega_inv, omega_len })
    }

    /// Parses a type tag, a word and an element.
    pub fn parse(tag: &str, word: &str, omega: &str) -> Result<Self> {
        let system = CoxeterSystem::from_tag(tag, false)?;
        let word = CoxWord::parse(word)?;
        let omega = system.parse_element(omega)?;
        Self::new(system, word, omega)
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn word(&self) -> &CoxWord {
        &self.word
    }

    pub fn omega(&self) -> &GroupElement {
        &self.omega
    }

    pub fn m(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.system.contains_reduced_word(&self.word.0, &self.omega)
    }

    fn in_inv_omega(&self, beta: RootId) -> bool {
        self.system.is_positive(beta) && self.omega_inv >> beta & 1 == 1
    }

    fn nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyComplex)
        } else {
            Ok(())
        }
    }

    /// The complement of `facet` spells a reduced expression of `w`.
    pub fn is_facet(&self, facet: Facet) -> bool {
        if facet.0 >> self.m() != 0 || facet.len() + self.omega_len != self.m() {
            return false;
        }
        let mut w = self.system.identity();
        for (k, &s) in self.word.0.iter().enumerate() {
            if !facet.contains(k) {
                w = self.system.mul_generator(&w, s);
            }
        }
        w == self.omega
    }

    fn check_facet(&self, facet: Facet) -> Result<()> {
        if self.is_facet(facet) {
            Ok(())
        } else {
            Err(Error::InvalidFacet(facet.to_string()))
        }
    }

    /// `r(I, k)` for every position `k`, with the prefix products.
    fn root_walk(&self, facet: Facet) -> (Vec<RootId>, Vec<GroupElement>) {
        let mut w = self.system.identity();
        let mut roots = Vec::with_capacity(self.m());
        let mut prefixes = Vec::with_capacity(self.m());
        for (k, &s) in self.word.0.iter().enumerate() {
            roots.push(self.system.act(&w, s));
            prefixes.push(w.clone());
            if !facet.contains(k) {
                w = self.system.mul_generator(&w, s);
            }
        }
        (roots, prefixes)
    }

    /// `r(I, k)` for all positions.
    pub fn roots(&self, facet: Facet) -> Result<Vec<RootId>> {
        self.check_facet(facet)?;
        Ok(self.root_walk(facet).0)
    }

    pub fn root_function(&self, facet: Facet, k: usize) -> Result<RootId> {
        if k >= self.m() {
            return Err(Error::Precondition(format!("position {} out of range", k + 1)));
        }
        Ok(self.roots(facet)?[k])
    }

    /// `R(I)` as a multiset, in position order.
    pub fn root_configuration(&self, facet: Facet) -> Result<Vec<RootId>> {
        let roots = self.roots(facet)?;
        Ok(facet.positions().into_iter().map(|k| roots[k]).collect())
    }

    /// Lexicographically smallest facet: the reduced expression is taken as
    /// far right as possible.
    pub fn greedy_facet(&self) -> Result<Facet> {
        let mut v = self.omega.clone();
        let mut facet = Facet::default();
        for (k, &s) in self.word.0.iter().enumerate().rev() {
            if self.system.is_right_descent(&v, s) {
                v = self.system.mul_generator(&v, s);
            } else {
                facet = facet.with(k);
            }
        }
        if v != self.system.identity() {
            return Err(Error::EmptyComplex);
        }
        Ok(facet)
    }

    /// Lexicographically largest facet.
    pub fn antigreedy_facet(&self) -> Result<Facet> {
        let mut v = self.omega.clone();
        let mut facet = Facet::default();
        for (k, &s) in self.word.0.iter().enumerate() {
            if self.system.is_left_descent(&v, s) {
                v = self.system.generator_mul(s, &v);
            } else {
                facet = facet.with(k);
            }
        }
        if v != self.system.identity() {
            return Err(Error::EmptyComplex);
        }
        Ok(facet)
    }

    fn flip_with_roots(&self, facet: Facet, roots: &[RootId], i: usize) -> Option<Flip> {
        let beta = roots[i];
        let neg = self.system.negate(beta);
        if !self.in_inv_omega(beta) && !self.in_inv_omega(neg) {
            return None;
        }
        let j = (0..self.m()).find(|&j| !facet.contains(j) && (roots[j] == beta || roots[j] == neg))?;
        Some(Flip {
            from: facet,
            to: facet.without(i).with(j),
            i,
            j,
            root: beta,
            increasing: self.system.is_positive(beta),
        })
    }

    /// Flip at position `i` (0-based).
    pub fn flip(&self, facet: Facet, i: usize) -> Result<Flip> {
        let roots = self.roots(facet)?;
        if !facet.contains(i) {
            return Err(Error::NotFlippable(format!("position {} is not in {facet}", i + 1)));
        }
        self.flip_with_roots(facet, &roots, i)
            .ok_or_else(|| Error::NotFlippable(format!("position {} of {facet}", i + 1)))
    }

    pub fn flips(&self, facet: Facet) -> Result<Vec<Flip>> {
        let roots = self.roots(facet)?;
        Ok(facet.positions().into_iter().filter_map(|i| self.flip_with_roots(facet, &roots, i)).collect())
    }

    /// All facets, by flip closure from the greedy facet, sorted.
    pub fn facets(&self, cap: usize) -> Result<Vec<Facet>> {
        let start = self.greedy_facet()?;
        let mut seen: BTreeSet<Facet> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let (roots, _) = self.root_walk(f);
            for i in f.positions() {
                if let Some(flip) = self.flip_with_roots(f, &roots, i) {
                    if seen.insert(flip.to) {
                        if seen.len() > cap {
                            return Err(Error::CapExceeded { what: "facets", cap });
                        }
                        queue.push_back(flip.to);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Roots as coefficient vectors.
    pub fn root_vectors(&self, roots: &[RootId]) -> Vec<Vec<Q5>> {
        roots.iter().map(|&b| self.system.root(b).to_vec()).collect()
    }

    /// Pointedness of `cone R(I)`, decided geometrically.
    pub fn is_acyclic_geometric(&self, facet: Facet) -> Result<bool> {
        let config = self.root_configuration(facet)?;
        Ok(cone::is_pointed(&self.root_vectors(&config)))
    }

    /// Masks `(P, N)` with `pi in L(I)` iff `Inv(pi) & P = 0` and `N ⊆ Inv(pi)`.
    fn extension_masks(&self, config: &[RootId]) -> (u128, u128) {
        let mut pos = 0u128;
        let mut neg = 0u128;
        for &b in config {
            if self.system.is_positive(b) {
                pos |= 1 << b;
            } else {
                neg |= 1 << self.system.negate(b);
            }
        }
        (pos, neg)
    }

    /// `L(I)` as ascending element indices of `group`.
    pub fn linear_extensions(&self, facet: Facet, group: &CoxeterGroup) -> Result<Vec<usize>> {
        let config = self.root_configuration(facet)?;
        let (pos, neg) = self.extension_masks(&config);
        Ok((0..group.len())
            .filter(|&x| {
                let inv = group.inv_mask(x);
                inv & pos == 0 && inv & neg == neg
            })
            .collect())
    }

    /// Element indices of `[e, w]`, ascending.
    pub fn interval(&self, group: &CoxeterGroup) -> Vec<usize> {
        (0..group.len()).filter(|&x| group.inv_mask(x) & !self.omega_inv == 0).collect()
    }

    /// The sweeping algorithm; always returns a facet of a non-empty complex.
    pub fn sweep(&self, pi: &GroupElement) -> Result<Facet> {
        self.nonempty()?;
        let pi_inv = self.system.inv_mask(pi);
        let mut u = self.system.identity();
        let mut facet = Facet::default();
        for (j, &s) in self.word.0.iter().enumerate() {
            let beta = self.system.act(&u, s);
            let skip = if !self.system.is_positive(beta) || !self.in_inv_omega(beta) {
                true
            } else if pi_inv >> beta & 1 == 1 {
                false
            } else {
                let rest = self.system.mul(&self.system.inverse(&u), &self.omega);
                self.system.contains_reduced_word(&self.word.0[j + 1..], &rest)
            };
            if skip {
                facet = facet.with(j);
            } else {
                u = self.system.mul_generator(&u, s);
            }
        }
        Ok(facet)
    }

    /// Whole-complex data relative to an enumerated group.
    pub fn analyze(&self, cap: usize) -> Result<Analysis> {
        self.nonempty()?;
        let group = self.system.group(cap)?;
        let facets = self.facets(cap)?;
        let index: HashMap<Facet, usize> = facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut roots = Vec::with_capacity(facets.len());
        let mut extensions = Vec::with_capacity(facets.len());
        let mut flips = Vec::new();
        for &f in &facets {
            let (r, _) = self.root_walk(f);
            for i in f.positions() {
                if let Some(flip) = self.flip_with_roots(f, &r, i) {
                    flips.push(flip);
                }
            }
            extensions.push(self.linear_extensions(f, &group)?);
            roots.push(r);
        }
        let interval = self.interval(&group);
        Ok(Analysis { complex: self.clone(), group, facets, index, roots, extensions, flips, interval })
    }

    /// For facets first differing at a position `j` in `first`,
    /// `-r(first, j)` lies in `cone R(second)`.
    pub fn first_difference_cone(&self, first: Facet, second: Facet) -> Result<Option<bool>> {
        let diff = first.0 ^ second.0;
        if diff == 0 {
            return Ok(None);
        }
        let j = diff.trailing_zeros() as usize;
        let (a, b) = if first.contains(j) { (first, second) } else { (second, first) };
        let beta = self.root_function(a, j)?;
        let config = self.root_configuration(b)?;
        let target: Vec<Q5> = self.system.root(beta).iter().map(|&x| -x).collect();
        Ok(Some(cone::cone_membership(&self.root_vectors(&config), &target)))
    }

    /// One step of the lower-set argument: given `pi in L(I)` and a right
    /// descent `s` of `pi`, the facet `I'` with `pi s in L(I')`. When
    /// `-pi s(alpha_s)` is in `R(I)`, the last position carrying it is flipped.
    pub fn descend(&self, facet: Facet, pi: &GroupElement, s: usize) -> Result<Facet> {
        if !self.system.is_right_descent(pi, s) {
            return Err(Error::Precondition(format!("{} is not a right descent", s + 1)));
        }
        let pi_s = self.system.mul_generator(pi, s);
        let beta = self.system.act(&pi_s, s);
        let neg = self.system.negate(beta);
        let roots = self.roots(facet)?;
        let Some(j) = facet.positions().into_iter().rev().find(|&k| roots[k] == neg) else {
            return Ok(facet);
        };
        Ok(self.flip_with_roots(facet, &roots, j).ok_or_else(|| Error::NotFlippable(format!("{facet}")))?.to)
    }

    pub fn describe(&self) -> String {
        format!("{} Q={} omega={}", self.system.cartan_type(), self.word, self.system.format_element(&self.omega))
    }

    /// Whether `r(J, k)` after the flip matches the reflection rule.
    pub fn flip_update_rule_holds(&self, flip: &Flip) -> Result<bool> {
        let (roots, prefixes) = self.root_walk(flip.from);
        let after = self.roots(flip.to)?;
        let (lo, hi) = (flip.i.min(flip.j), flip.i.max(flip.j));
        let u = &prefixes[lo];
        let s = self.word.0[lo];
        let s_beta = self.system.mul(&self.system.mul_generator(u, s), &self.system.inverse(u));
        Ok((0..self.m()).all(|k| {
            let expect = if lo < k && k <= hi { self.system.act(&s_beta, roots[k]) } else { roots[k] };
            after[k] == expect
        }))
    }
}

/// Facets, root functions and linear extensions of one complex.
#[derive(Debug)]
pub struct Analysis {
    pub complex: SubwordComplex,
    pub group: Arc<CoxeterGroup>,
    pub facets: Vec<Facet>,
    pub index: HashMap<Facet, usize>,
    /// `r(I, k)` for each facet and position.
    pub roots: Vec<Vec<RootId>>,
    /// `L(I)` per facet, as group indices.
    pub extensions: Vec<Vec<usize>>,
    /// Every flip, from each facet, in facet order.
    pub flips: Vec<Flip>,
    /// `[e, w]` as group indices.
    pub interval: Vec<usize>,
}

/// The equivalence on `[e, w]` whose classes are the sets `L(I) ∩ [e, w]`.
#[derive(Debug)]
pub struct EquivalencePartition {
    /// `[e, w]` as a poset on group indices.
    pub poset: FinitePoset<usize>,
    /// Strongly acyclic facets, in facet order; block `b` belongs to `facets[b]`.
    pub facets: Vec<Facet>,
    /// Blocks as indices into `poset`.
    pub blocks: Vec<Vec<usize>>,
}

impl Analysis {
    pub fn facet_index(&self, facet: Facet) -> Option<usize> {
        self.index.get(&facet).copied()
    }

    pub fn config(&self, f: usize) -> Vec<RootId> {
        self.facets[f].positions().into_iter().map(|k| self.roots[f][k]).collect()
    }

    pub fn is_acyclic(&self, f: usize) -> bool {
        !self.extensions[f].is_empty()
    }

    pub fn strong_extensions(&self, f: usize) -> Vec<usize> {
        self.extensions[f].iter().copied().filter(|x| self.interval.binary_search(x).is_ok()).collect()
    }

    pub fn is_strongly_acyclic(&self, f: usize) -> bool {
        !self.strong_extensions(f).is_empty()
    }

    pub fn acyclic_count(&self) -> usize {
        (0..self.facets.len()).filter(|&f| self.is_acyclic(f)).count()
    }

    pub fn strongly_acyclic_count(&self) -> usize {
        (0..self.facets.len()).filter(|&f| self.is_strongly_acyclic(f)).count()
    }

    /// Increasing flip poset on the chosen facets (all when `acyclic_only`
    /// is false).
    pub fn increasing_flip_poset(&self, acyclic_only: bool) -> Result<FinitePoset<Facet>> {
        let keep: Vec<usize> =
            (0..self.facets.len()).filter(|&f| !acyclic_only || self.is_acyclic(f)).collect();
        let local: HashMap<usize, usize> = keep.iter().enumerate().map(|(a, &f)| (f, a)).collect();
        let arcs: Vec<(usize, usize)> = self
            .flips
            .iter()
            .filter(|fl| fl.increasing)
            .filter_map(|fl| Some((*local.get(&self.index[&fl.from])?, *local.get(&self.index[&fl.to])?)))
            .collect();
        FinitePoset::from_relation(keep.iter().map(|&f| self.facets[f]).collect(), &arcs)
    }

    fn interval_poset(&self) -> FinitePoset<usize> {
        let g = &self.group;
        let local: HashMap<usize, usize> = self.interval.iter().enumerate().map(|(a, &x)| (x, a)).collect();
        let mut arcs = Vec::new();
        for (a, &x) in self.interval.iter().enumerate() {
            for s in 0..self.complex.system.rank() {
                let y = g.right_mul(x, s);
                if g.length(y) > g.length(x) {
                    if let Some(&b) = local.get(&y) {
                        arcs.push((a, b));
                    }
                }
            }
        }
        FinitePoset::from_relation(self.interval.clone(), &arcs).expect("weak order interval")
    }

    pub fn equivalence_partition(&self) -> EquivalencePartition {
        let poset = self.interval_poset();
        let mut facets = Vec::new();
        let mut blocks = Vec::new();
        for f in 0..self.facets.len() {
            let block: Vec<usize> =
                self.strong_extensions(f).iter().map(|x| poset.index_of(x).expect("in interval")).collect();
            if !block.is_empty() {
                facets.push(self.facets[f]);
                blocks.push(block);
            }
        }
        EquivalencePartition { poset, facets, blocks }
    }

    fn element_label(&self, x: usize) -> String {
        self.complex.system.format_element(self.group.element(x))
    }

    fn subject(&self) -> String {
        self.complex.describe()
    }

    /// Order convexity of every `L(I)`; the union is a lower set containing
    /// `[e, w]`; distinct facets have disjoint extension sets.
    pub fn verify_thm_b(&self) -> Report {
        let mut report = Report::new(self.subject());
        let g = &self.group;
        let mut convex_witness = Value::Null;
        'facets: for (f, ext) in self.extensions.iter().enumerate() {
            let mut member = vec![false; g.len()];
            ext.iter().for_each(|&x| member[x] = true);
            for &a in ext {
                for &b in ext {
                    if a == b || !g.weak_leq(a, b) {
                        continue;
                    }
                    if let Some(t) = (0..g.len()).find(|&t| !member[t] && g.weak_leq(a, t) && g.weak_leq(t, b)) {
                        convex_witness = json!({"facet": self.facets[f], "between": self.element_label(t)});
                        break 'facets;
                    }
                }
            }
        }
        report.push("convex", convex_witness.is_null(), convex_witness);

        let mut owner: Vec<Option<usize>> = vec![None; g.len()];
        let mut disjoint_witness = Value::Null;
        for (f, ext) in self.extensions.iter().enumerate() {
            for &x in ext {
                if let Some(o) = owner[x] {
                    if disjoint_witness.is_null() {
                        disjoint_witness = json!({
                            "element": self.element_label(x),
                            "facets": [self.facets[o], self.facets[f]],
                        });
                    }
                } else {
                    owner[x] = Some(f);
                }
            }
        }
        let mut lower_witness = Value::Null;
        'lower: for x in (0..g.len()).filter(|&x| owner[x].is_some()) {
            for s in 0..self.complex.system.rank() {
                let y = g.right_mul(x, s);
                if g.length(y) < g.length(x) && owner[y].is_none() {
                    lower_witness = json!({"member": self.element_label(x), "below": self.element_label(y)});
                    break 'lower;
                }
            }
        }
        report.push("lower_set", lower_witness.is_null(), lower_witness);
        let uncovered = self.interval.iter().find(|&&x| owner[x].is_none());
        report.push(
            "cover",
            uncovered.is_none(),
            uncovered.map_or(Value::Null, |&x| json!({"uncovered": self.element_label(x)})),
        );
        report.push("partition", disjoint_witness.is_null(), disjoint_witness);
        report
    }

    /// For sorting words: the acyclic facets' extensions tile exactly
    /// `[e, w]`, and the positive roots common to every `cone R(I)` are the
    /// non-inversions of `w`.
    pub fn verify_thm_c(&self) -> Result<Report> {
        let sys = &self.complex.system;
        if !sys.is_sorting(&self.complex.word)? {
            return Err(Error::NotSorting);
        }
        let mut report = Report::new(self.subject());
        let mut union: Vec<usize> = self.extensions.iter().flatten().copied().collect();
        union.sort_unstable();
        let outside = union.iter().find(|x| self.interval.binary_search(x).is_err());
        let missing = self.interval.iter().find(|x| union.binary_search(x).is_err());
        let witness = match (outside, missing) {
            (Some(&x), _) => json!({"outside_interval": self.element_label(x)}),
            (None, Some(&x)) => json!({"uncovered": self.element_label(x)}),
            (None, None) => Value::Null,
        };
        report.push("tiles_interval", witness.is_null(), witness);

        let cones: Vec<Vec<Vec<Q5>>> =
            (0..self.facets.len()).map(|f| self.complex.root_vectors(&self.config(f))).collect();
        let mut witness = Value::Null;
        for beta in 0..sys.positive_count() {
            let in_all = cones.iter().all(|c| cone::cone_membership(c, sys.root(beta)));
            let noninversion = self.complex.omega_inv >> beta & 1 == 0;
            if in_all != noninversion {
                witness = json!({
                    "root": sys.root(beta).iter().map(Q5::to_string).collect::<Vec<_>>(),
                    "in_every_cone": in_all,
                    "noninversion": noninversion,
                });
                break;
            }
        }
        report.push("cone_intersection", witness.is_null(), witness);
        Ok(report)
    }

    /// The directing root of the flip is a ray of `R(I)`.
    pub fn is_extremal(&self, flip: &Flip) -> bool {
        let f = self.index[&flip.from];
        let config = self.complex.root_vectors(&self.config(f));
        cone::is_extreme_ray(&config, self.complex.system.root(flip.root))
    }

    /// Increasing extremal flips between strongly acyclic facets, as block
    /// index pairs of `part`.
    pub fn extremal_flip_graph(&self, part: &EquivalencePartition) -> Vec<(usize, usize)> {
        let block: HashMap<Facet, usize> = part.facets.iter().enumerate().map(|(b, &f)| (f, b)).collect();
        let mut arcs: Vec<(usize, usize)> = self
            .flips
            .iter()
            .filter(|fl| fl.increasing)
            .filter_map(|fl| {
                let a = *block.get(&fl.from)?;
                let b = *block.get(&fl.to)?;
                self.is_extremal(fl).then_some((a, b))
            })
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    fn require_alternating(&self) -> Result<()> {
        if self.complex.system.is_alternating(&self.complex.word) {
            Ok(())
        } else {
            Err(Error::NotAlternating)
        }
    }

    /// The equivalence is a lattice congruence of `[e, w]`.
    pub fn conjecture_a(&self) -> Result<Report> {
        self.require_alternating()?;
        let part = self.equivalence_partition();
        Ok(self.congruence_report(&part))
    }

    fn congruence_report(&self, part: &EquivalencePartition) -> Report {
        let mut report = Report::new(self.subject());
        let check = part.poset.is_congruence(&part.blocks).expect("weak order intervals are lattices");
        let witness = match &check.witness {
            None => Value::Null,
            Some(v) => json!(self.describe_violation(part, v)),
        };
        report.push("congruence", check.is_congruence, witness);
        report
    }

    fn describe_violation(&self, part: &EquivalencePartition, v: &crate::lattice::CongruenceViolation) -> String {
        use crate::lattice::CongruenceViolation as V;
        let label = |a: usize| self.element_label(*part.poset.element(a));
        match *v {
            V::NotAPartition => "not a partition".to_string(),
            V::NotAnInterval { block } => format!("class of {} is not an interval", part.facets[block]),
            V::DownProjection { lower, upper } => {
                format!("down projection breaks at cover {} < {}", label(lower), label(upper))
            }
            V::UpProjection { lower, upper } => {
                format!("up projection breaks at cover {} < {}", label(lower), label(upper))
            }
        }
    }

    /// The quotient's Hasse diagram equals the graph of extremal increasing
    /// flips between strongly acyclic facets.
    pub fn conjecture_b(&self) -> Result<Report> {
        self.require_alternating()?;
        let part = self.equivalence_partition();
        Ok(self.quotient_report(&part))
    }

    fn quotient_report(&self, part: &EquivalencePartition) -> Report {
        let mut report = Report::new(self.subject());
        let quotient = match part.poset.quotient(&part.blocks) {
            Ok(q) => q,
            Err(e) => {
                report.push("quotient_equals_extremal_flips", false, json!({"no_quotient": e.to_string()}));
                return report;
            }
        };
        let hasse: BTreeSet<(usize, usize)> = quotient.covers().iter().copied().collect();
        let flips: BTreeSet<(usize, usize)> = self.extremal_flip_graph(part).into_iter().collect();
        let witness = match hasse.symmetric_difference(&flips).next() {
            None => Value::Null,
            Some(&(a, b)) => json!({
                "in_quotient": hasse.contains(&(a, b)),
                "lower": part.facets[a],
                "upper": part.facets[b],
            }),
        };
        report.push("quotient_equals_extremal_flips", witness.is_null(), witness);
        report
    }

    /// Both conjectures from one partition.
    pub fn conjectures(&self) -> Result<(Report, Report)> {
        self.require_alternating()?;
        let part = self.equivalence_partition();
        Ok((self.congruence_report(&part), self.quotient_report(&part)))
    }
}

/// Word of the triangular grid with `n` pipes, read column by column from
/// west to east, each column from bottom to top.
pub fn triangular_word(n: usize) -> CoxWord {
    CoxWord(triangular_cells(n).into_iter().map(|(r, c)| r + c - 2).collect())
}

/// Grid cell of each position of [`triangular_word`].
pub fn triangular_cells(n: usize) -> Vec<Cell> {
    (1..n).flat_map(|c| (1..=n - c).rev().map(move |r| (r, c))).collect()
}

/// The pipe dream with elbows at the facet positions.
pub fn facet_to_pipe_dream(n: usize, facet: Facet) -> Result<PipeDream> {
    let cells = triangular_cells(n);
    let crosses: Vec<Cell> = cells.iter().enumerate().filter(|(k, _)| !facet.contains(*k)).map(|(_, &c)| c).collect();
    PipeDream::from_crosses(n, &crosses)
}

pub fn pipe_dream_to_facet(p: &PipeDream) -> Facet {
    let cells = triangular_cells(p.n());
    Facet::from_positions((0..cells.len()).filter(|&k| !p.is_cross(cells[k])))
}

/// The type-A subword complex on the triangular word whose facets are
/// the pipe dreams of `omega`.
pub fn pipe_dream_complex(omega: &Permutation) -> Result<SubwordComplex> {
    let n = omega.n();
    if n < 2 {
        return Err(Error::Precondition("need at least two pipes".to_string()));
    }
    let system = CoxeterSystem::new(crate::coxeter::CartanType::A(n - 1), false)?;
    let w = system.from_permutation(omega).ok_or_else(|| Error::InvalidPermutation(omega.to_string()))?;
    SubwordComplex::new(system, triangular_word(n), w)
}
