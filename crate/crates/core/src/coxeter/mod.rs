//! Finite Coxeter systems with exact root systems.
//!
//! Roots are coefficient vectors over the simple roots with entries in
//! Q(sqrt 5). Every group element is stored through its action on the root
//! set, which determines its matrix since the roots span.

pub mod field;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::lattice::FinitePoset;
use crate::perm::Permutation;
use field::Q5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H3,
    H4,
    I2(u32),
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(k) | CartanType::B(k) | CartanType::D(k) | CartanType::E(k) => k,
            CartanType::F4 | CartanType::H4 => 4,
            CartanType::H3 => 3,
            CartanType::I2(_) => 2,
        }
    }

    /// Types whose group is too big for routine scans.
    pub fn is_large(&self) -> bool {
        matches!(self, CartanType::E(_) | CartanType::F4 | CartanType::H4)
    }

    /// Coxeter matrix, 0-based generators.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let k = self.rank();
        let mut m = vec![vec![2u32; k]; k];
        for (s, row) in m.iter_mut().enumerate() {
            row[s] = 1;
        }
        let mut edge = |s: usize, t: usize, v: u32| {
            m[s][t] = v;
            m[t][s] = v;
        };
        match *self {
            CartanType::A(k) => (1..k).for_each(|s| edge(s - 1, s, 3)),
            CartanType::B(k) => {
                (1..k).for_each(|s| edge(s - 1, s, 3));
                edge(k - 2, k - 1, 4);
            }
            CartanType::D(k) => {
                (1..k - 1).for_each(|s| edge(s - 1, s, 3));
                edge(k - 3, k - 1, 3);
            }
            CartanType::E(k) => {
                // Bourbaki labels: 1-3-4-5-...-k with 2 attached to 4
                edge(0, 2, 3);
                edge(1, 3, 3);
                (3..k).for_each(|s| edge(s - 1, s, 3));
            }
            CartanType::F4 => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
            CartanType::H3 => {
                edge(0, 1, 5);
                edge(1, 2, 3);
            }
            CartanType::H4 => {
                edge(0, 1, 5);
                edge(1, 2, 3);
                edge(2, 3, 3);
            }
            CartanType::I2(m) => edge(0, 1, m),
        }
        m
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || Error::UnsupportedType(s.to_string());
        if let Some(rest) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = rest.parse().map_err(|_| bad())?;
            return if (3..=6).contains(&m) { Ok(CartanType::I2(m)) } else { Err(bad()) };
        }
        let (head, tail) = t.split_at(1);
        let k: usize = tail.parse().map_err(|_| bad())?;
        match (head, k) {
            ("A", k) if k >= 1 => Ok(CartanType::A(k)),
            ("B", k) if k >= 2 => Ok(CartanType::B(k)),
            ("D", k) if k >= 4 => Ok(CartanType::D(k)),
            ("E", 6..=8) => Ok(CartanType::E(k)),
            ("F", 4) => Ok(CartanType::F4),
            ("H", 3) => Ok(CartanType::H3),
            ("H", 4) => Ok(CartanType::H4),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CartanType::A(k) => write!(f, "A{k}"),
            CartanType::B(k) => write!(f, "B{k}"),
            CartanType::D(k) => write!(f, "D{k}"),
            CartanType::E(k) => write!(f, "E{k}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::H3 => write!(f, "H3"),
            CartanType::H4 => write!(f, "H4"),
            CartanType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Index into [`CoxeterSystem::roots`]. Positive roots come first; the
/// negative of root `i < N` is `i + N`. Roots `0..rank` are the simple roots.
pub type RootId = usize;

#[derive(Debug)]
pub struct CoxeterSystem {
    cartan_type: CartanType,
    coxeter_matrix: Vec<Vec<u32>>,
    /// `cartan[t][s]`: `s_t(alpha_s) = alpha_s - cartan[t][s] alpha_t`.
    cartan: Vec<Vec<Q5>>,
    roots: Vec<Vec<Q5>>,
    root_index: HashMap<Vec<Q5>, RootId>,
    /// Action of each simple reflection on root indices.
    reflections: Vec<Vec<u16>>,
    group: OnceLock<std::result::Result<Arc<CoxeterGroup>, Error>>,
    longest: OnceLock<GroupElement>,
}

/// A group element as a permutation of root indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    images: Arc<[u16]>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({:?})", &self.images[..])
    }
}

/// Sequence of 0-based generator indices. Text form is 1-based and
/// comma-separated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CoxWord(pub Vec<usize>);

impl CoxWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Self(Vec::new()));
        }
        let letters = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<_>>()?;
        Ok(Self(letters))
    }
}

impl fmt::Display for CoxWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| (s + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

fn cartan_entry(m: u32, lower: bool) -> Q5 {
    match m {
        2 => Q5::zero(),
        3 => Q5::int(-1),
        4 => Q5::int(if lower { -1 } else { -2 }),
        5 => -Q5::phi(),
        6 => Q5::int(if lower { -1 } else { -3 }),
        _ => unreachable!("unsupported bond {m}"),
    }
}

impl CoxeterSystem {
    /// Builds the root system. Large types need `allow_large`.
    pub fn new(cartan_type: CartanType, allow_large: bool) -> Result<Arc<Self>> {
        if cartan_type.is_large() && !allow_large {
            return Err(Error::LargeType(cartan_type.to_string()));
        }
        let m = cartan_type.coxeter_matrix();
        let k = m.len();
        let mut cartan = vec![vec![Q5::zero(); k]; k];
        for t in 0..k {
            for s in 0..k {
                cartan[t][s] = if s == t { Q5::int(2) } else { cartan_entry(m[t][s], t < s) };
            }
        }
        let reflect = |v: &[Q5], t: usize| -> Vec<Q5> {
            let mut w = v.to_vec();
            let mut pairing = Q5::zero();
            for s in 0..k {
                pairing = pairing + cartan[t][s] * v[s];
            }
            w[t] = w[t] - pairing;
            w
        };
        let simple: Vec<Vec<Q5>> =
            (0..k).map(|s| (0..k).map(|t| if s == t { Q5::one() } else { Q5::zero() }).collect()).collect();
        let mut positive = simple.clone();
        let mut seen: HashMap<Vec<Q5>, usize> = simple.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut queue: VecDeque<Vec<Q5>> = simple.into_iter().collect();
        while let Some(v) = queue.pop_front() {
            for t in 0..k {
                let w = reflect(&v, t);
                let nonneg = w.iter().all(|x| !x.is_negative());
                let nonpos = w.iter().all(|x| !x.is_positive());
                if !nonneg && !nonpos {
                    return Err(Error::UnsupportedType(format!("{cartan_type}: mixed-sign root")));
                }
                if nonneg && !seen.contains_key(&w) {
                    seen.insert(w.clone(), positive.len());
                    positive.push(w.clone());
                    queue.push_back(w);
                }
            }
            if positive.len() > 1000 {
                return Err(Error::UnsupportedType(format!("{cartan_type}: root closure did not terminate")));
            }
        }
        let count = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|&x| -x).collect::<Vec<_>>()));
        let root_index: HashMap<Vec<Q5>, RootId> =
            roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut reflections = Vec::with_capacity(k);
        for t in 0..k {
            let mut perm = Vec::with_capacity(2 * count);
            for v in &roots {
                let w = reflect(v, t);
                let id = *root_index
                    .get(&w)
                    .ok_or_else(|| Error::UnsupportedType(format!("{cartan_type}: roots not closed")))?;
                perm.push(id as u16);
            }
            reflections.push(perm);
        }
        Ok(Arc::new(Self {
            cartan_type,
            coxeter_matrix: m,
            cartan,
            roots,
            root_index,
            reflections,
            group: OnceLock::new(),
            longest: OnceLock::new(),
        }))
    }

    pub fn from_tag(tag: &str, allow_large: bool) -> Result<Arc<Self>> {
        Self::new(tag.parse()?, allow_large)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.coxeter_matrix.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    pub fn cartan_matrix(&self) -> &[Vec<Q5>] {
        &self.cartan
    }

    /// Number of positive roots.
    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root(&self, id: RootId) -> &[Q5] {
        &self.roots[id]
    }

    pub fn root_id(&self, v: &[Q5]) -> Option<RootId> {
        self.root_index.get(v).copied()
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.positive_count()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let n = self.positive_count();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    pub fn simple_root(&self, s: usize) -> RootId {
        s
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { images: (0..self.roots.len() as u16).collect() }
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        GroupElement { images: self.reflections[s].clone().into() }
    }

    /// `w s`.
    pub fn mul_generator(&self, w: &GroupElement, s: usize) -> GroupElement {
        GroupElement { images: self.reflections[s].iter().map(|&b| w.images[b as usize]).collect() }
    }

    /// `s w`.
    pub fn generator_mul(&self, s: usize, w: &GroupElement) -> GroupElement {
        GroupElement { images: w.images.iter().map(|&b| self.reflections[s][b as usize]).collect() }
    }

    pub fn mul(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        GroupElement { images: v.images.iter().map(|&b| u.images[b as usize]).collect() }
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        let mut inv = vec![0u16; w.images.len()];
        for (b, &img) in w.images.iter().enumerate() {
            inv[img as usize] = b as u16;
        }
        GroupElement { images: inv.into() }
    }

    /// Image of a root.
    pub fn act(&self, w: &GroupElement, root: RootId) -> RootId {
        w.images[root] as usize
    }

    /// `Inv(w) = Phi+ ∩ w(Phi-)`, as sorted positive root ids.
    pub fn inv_set(&self, w: &GroupElement) -> Vec<RootId> {
        let inv = self.inverse(w);
        (0..self.positive_count()).filter(|&b| !self.is_positive(inv.images[b] as usize)).collect()
    }

    /// `Inv(w)` as a bit mask over positive root ids.
    pub fn inv_mask(&self, w: &GroupElement) -> u128 {
        self.inv_set(w).into_iter().fold(0u128, |m, b| m | 1u128 << b)
    }

    /// Whether the positive root `beta` lies in `Inv(w)`.
    pub fn is_inversion(&self, w: &GroupElement, beta: RootId) -> bool {
        let pre = w.images.iter().position(|&x| x as usize == beta).expect("permutation");
        !self.is_positive(pre)
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        (0..self.positive_count()).filter(|&b| !self.is_positive(w.images[b] as usize)).count()
    }

    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        !self.is_positive(w.images[s] as usize)
    }

    pub fn is_left_descent(&self, w: &GroupElement, s: usize) -> bool {
        self.is_right_descent(&self.inverse(w), s)
    }

    pub fn weak_leq(&self, u: &GroupElement, w: &GroupElement) -> bool {
        let (a, b) = (self.inv_mask(u), self.inv_mask(w));
        a & !b == 0
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self, w: &GroupElement) -> CoxWord {
        let mut v = w.clone();
        let mut word = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| self.is_left_descent(&v, s)) {
            word.push(s);
            v = self.generator_mul(s, &v);
        }
        CoxWord(word)
    }

    pub fn element(&self, word: &CoxWord) -> Result<GroupElement> {
        let mut w = self.identity();
        for &s in &word.0 {
            if s >= self.rank() {
                return Err(Error::InvalidWord(format!("generator {} out of range", s + 1)));
            }
            w = self.mul_generator(&w, s);
        }
        Ok(w)
    }

    pub fn is_reduced(&self, word: &CoxWord) -> Result<bool> {
        Ok(self.length(&self.element(word)?) == word.len())
    }

    pub fn longest_element(&self) -> GroupElement {
        self.longest
            .get_or_init(|| {
                let mut w = self.identity();
                while let Some(s) = (0..self.rank()).find(|&s| !self.is_right_descent(&w, s)) {
                    w = self.mul_generator(&w, s);
                }
                w
            })
            .clone()
    }

    /// Columns are the images of the simple roots.
    pub fn matrix(&self, w: &GroupElement) -> Vec<Vec<Q5>> {
        (0..self.rank()).map(|s| self.roots[w.images[s] as usize].clone()).collect()
    }

    /// Fold of `D(Qs) = max(D(Q), D(Q) s)`.
    pub fn demazure_product(&self, word: &CoxWord) -> Result<GroupElement> {
        let mut d = self.identity();
        for &s in &word.0 {
            if s >= self.rank() {
                return Err(Error::InvalidWord(format!("generator {} out of range", s + 1)));
            }
            if !self.is_right_descent(&d, s) {
                d = self.mul_generator(&d, s);
            }
        }
        Ok(d)
    }

    /// Some subword of `word` is a reduced word for `x`. Scans from the
    /// right, stripping a letter whenever it is a right descent.
    pub fn contains_reduced_word(&self, word: &[usize], x: &GroupElement) -> bool {
        let mut v = x.clone();
        for &s in word.iter().rev() {
            if self.is_right_descent(&v, s) {
                v = self.mul_generator(&v, s);
            }
        }
        v == self.identity()
    }

    pub fn is_sorting(&self, word: &CoxWord) -> Result<bool> {
        Ok(self.demazure_product(word)? == self.longest_element())
    }

    /// Every non-commuting pair alternates along the word.
    pub fn is_alternating(&self, word: &CoxWord) -> bool {
        let k = self.rank();
        for s in 0..k {
            for t in s + 1..k {
                if self.coxeter_matrix[s][t] < 3 {
                    continue;
                }
                let mut last = None;
                for &x in &word.0 {
                    if x == s || x == t {
                        if last == Some(x) {
                            return false;
                        }
                        last = Some(x);
                    }
                }
            }
        }
        true
    }

    /// All elements, cached; `cap` bounds the size.
    pub fn group(self: &Arc<Self>, cap: usize) -> Result<Arc<CoxeterGroup>> {
        self.group
            .get_or_init(|| CoxeterGroup::enumerate(self.clone(), cap).map(Arc::new))
            .clone()
    }

    /// For type `A_{n-1}`: the pair `(i, j)` with root `e_i - e_j`.
    pub fn type_a_pair(&self, root: RootId) -> Option<(usize, usize)> {
        if !matches!(self.cartan_type, CartanType::A(_)) {
            return None;
        }
        let c = &self.roots[root];
        let n = c.len() + 1;
        let coeff = |k: usize| if k == 0 || k > c.len() { Q5::zero() } else { c[k - 1] };
        let mut plus = None;
        let mut minus = None;
        for k in 1..=n {
            let x = coeff(k) - coeff(k - 1);
            if x == Q5::one() {
                plus = Some(k);
            } else if x == Q5::int(-1) {
                minus = Some(k);
            }
        }
        Some((plus?, minus?))
    }

    /// For type `A_{n-1}`: the permutation `s_{q_1} ... s_{q_k}` in one-line
    /// notation.
    pub fn to_permutation(&self, w: &GroupElement) -> Option<Permutation> {
        let CartanType::A(k) = self.cartan_type else { return None };
        let mut images: Vec<usize> = (1..=k + 1).collect();
        for &s in &self.reduced_word(w).0 {
            images.swap(s, s + 1);
        }
        Permutation::new(images).ok()
    }

    pub fn from_permutation(&self, p: &Permutation) -> Option<GroupElement> {
        let CartanType::A(k) = self.cartan_type else { return None };
        if p.n() != k + 1 {
            return None;
        }
        let mut v = p.images().to_vec();
        let mut word = Vec::new();
        while let Some(t) = (0..k).find(|&t| v[t] > v[t + 1]) {
            v.swap(t, t + 1);
            word.push(t);
        }
        word.reverse();
        self.element(&CoxWord(word)).ok()
    }

    pub fn format_element(&self, w: &GroupElement) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.to_string()
        }
    }

    /// Accepts a 1-based comma-separated word, `e`, `w0`, or for type A a
    /// compact one-line permutation.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("w0") {
            return Ok(self.longest_element());
        }
        if let CartanType::A(k) = self.cartan_type {
            if !t.contains(',') && t.len() == k + 1 {
                if let Some(w) = t.parse::<Permutation>().ok().and_then(|p| self.from_permutation(&p)) {
                    return Ok(w);
                }
            }
        }
        let word = CoxWord::parse(t)?;
        let w = self.element(&word)?;
        Ok(w)
    }
}

/// All elements of a finite Coxeter group, sorted by length then by
/// smallest reduced word.
#[derive(Debug)]
pub struct CoxeterGroup {
    system: Arc<CoxeterSystem>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    lengths: Vec<usize>,
    inv_masks: Vec<u128>,
    right: Vec<Vec<usize>>,
    poset: OnceLock<FinitePoset<usize>>,
}

impl CoxeterGroup {
    fn enumerate(system: Arc<CoxeterSystem>, cap: usize) -> Result<Self> {
        let e = system.identity();
        let mut seen: HashMap<GroupElement, ()> = HashMap::from([(e.clone(), ())]);
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            for s in 0..system.rank() {
                let ws = system.mul_generator(&w, s);
                if !seen.contains_key(&ws) {
                    if seen.len() == cap {
                        return Err(Error::CapExceeded { what: "group elements", cap });
                    }
                    seen.insert(ws.clone(), ());
                    queue.push_back(ws);
                }
            }
        }
        let mut keyed: Vec<(usize, CoxWord, GroupElement)> = seen
            .into_keys()
            .map(|w| (system.length(&w), system.reduced_word(&w), w))
            .collect();
        keyed.sort();
        let elements: Vec<GroupElement> = keyed.into_iter().map(|(_, _, w)| w).collect();
        let index: HashMap<GroupElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let lengths = elements.iter().map(|w| system.length(w)).collect();
        let inv_masks = elements.iter().map(|w| system.inv_mask(w)).collect();
        let right = elements
            .iter()
            .map(|w| (0..system.rank()).map(|s| index[&system.mul_generator(w, s)]).collect())
            .collect();
        Ok(Self { system, elements, index, lengths, inv_masks, right, poset: OnceLock::new() })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn inv_mask(&self, i: usize) -> u128 {
        self.inv_masks[i]
    }

    /// Index of `w s`.
    pub fn right_mul(&self, i: usize, s: usize) -> usize {
        self.right[i][s]
    }

    pub fn weak_leq(&self, i: usize, j: usize) -> bool {
        self.inv_masks[i] & !self.inv_masks[j] == 0
    }

    /// Right weak order on element indices.
    pub fn weak_order(&self) -> &FinitePoset<usize> {
        self.poset.get_or_init(|| {
            let mut arcs = Vec::new();
            for i in 0..self.len() {
                for s in 0..self.system.rank() {
                    let j = self.right[i][s];
                    if self.lengths[j] > self.lengths[i] {
                        arcs.push((i, j));
                    }
                }
            }
            FinitePoset::from_relation((0..self.len()).collect(), &arcs).expect("weak order is acyclic")
        })
    }

    /// Indices of `[e, w]`, ascending.
    pub fn lower_interval(&self, w: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.weak_leq(i, w)).collect()
    }
}
