//! Permutations in one-line notation and the weak order on S_n.
//!
//! Values are 1-based. Inversions are value pairs `(i, j)` with `i < j`
//! and `j` appearing before `i`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::FinitePoset;

/// Default limit on the number of elements any enumeration may produce.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone)]
pub struct Permutation {
    images: Vec<usize>,
    positions: Vec<usize>,
}

impl Permutation {
    /// `images[t]` is the value at position `t + 1`; values must be `1..=n`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut positions = vec![0; n];
        for (t, &v) in images.iter().enumerate() {
            if v == 0 || v > n || positions[v - 1] != 0 {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            positions[v - 1] = t + 1;
        }
        Ok(Self { images, positions })
    }

    /// Like [`Permutation::new`] but also accepts a permutation of `0..n`,
    /// which is shifted to `1..=n`.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        if values.contains(&0) {
            Self::new(values.into_iter().map(|v| v + 1).collect())
        } else {
            Self::new(values)
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((1..=n).collect()).expect("identity")
    }

    /// The longest element `n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Self::new((1..=n).rev().collect()).expect("longest")
    }

    /// The reversing permutation on pipes `0..n+1`, i.e. `[0, n, ..., 1, n+1]`,
    /// returned 1-based on `n + 2` values.
    pub fn reversing(n: usize) -> Self {
        let mut v = vec![1];
        v.extend((2..=n + 1).rev());
        v.push(n + 2);
        Self::new(v).expect("reversing")
    }

    /// `0 omega` shifted to 1-based values: `[1, omega(1)+1, ..., omega(n)+1]`.
    pub fn zero_prepended(&self) -> Self {
        let mut v = vec![1];
        v.extend(self.images.iter().map(|x| x + 1));
        Self::new(v).expect("prepend")
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `omega(t)` for `t` in `1..=n`.
    pub fn at(&self, t: usize) -> usize {
        self.images[t - 1]
    }

    /// `omega^-1(v)` for `v` in `1..=n`.
    pub fn pos(&self, v: usize) -> usize {
        self.positions[v - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        Self { images: self.positions.clone(), positions: self.images.clone() }
    }

    /// `(self o other)(t) = self(other(t))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Self::new(other.images.iter().map(|&t| self.at(t)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(t, &v)| v == t + 1)
    }

    pub fn is_inversion(&self, i: usize, j: usize) -> bool {
        i < j && self.pos(i) > self.pos(j)
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        let mut l = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.images[a] > self.images[b] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn inversion_set(&self) -> BTreeSet<(usize, usize)> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.is_inversion(i, j) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// Inclusion of inversion sets.
    pub fn weak_leq(&self, other: &Self) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(self.weak_leq_unchecked(other))
    }

    pub(crate) fn weak_leq_unchecked(&self, other: &Self) -> bool {
        let n = self.n();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.is_inversion(i, j) && !other.is_inversion(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Swaps of adjacent positions holding an ascent.
    pub fn weak_covers_up(&self) -> Vec<Self> {
        (0..self.n().saturating_sub(1))
            .filter(|&t| self.images[t] < self.images[t + 1])
            .map(|t| self.swap_positions(t + 1))
            .collect()
    }

    pub fn weak_covers_down(&self) -> Vec<Self> {
        (0..self.n().saturating_sub(1))
            .filter(|&t| self.images[t] > self.images[t + 1])
            .map(|t| self.swap_positions(t + 1))
            .collect()
    }

    /// Swaps positions `t` and `t + 1` (1-based).
    pub fn swap_positions(&self, t: usize) -> Self {
        let mut v = self.images.clone();
        v.swap(t - 1, t);
        Self::new(v).expect("swap")
    }

    /// `nu(j) = #{i < j : omega^-1(i) < omega^-1(j)}`.
    pub fn noninversion_count(&self, j: usize) -> usize {
        (1..j).filter(|&i| self.pos(i) < self.pos(j)).count()
    }

    /// 132-avoiding.
    pub fn is_dominant(&self) -> bool {
        // for each middle position keep the smallest earlier value
        let mut min_before = usize::MAX;
        for b in 0..self.n() {
            let mid = self.images[b];
            if min_before < mid && self.images[b + 1..].iter().any(|&c| min_before < c && c < mid) {
                return false;
            }
            min_before = min_before.min(mid);
        }
        true
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Self::new(v.clone()).expect("perm"));
            if !next_permutation(&mut v) {
                break;
            }
        }
        out
    }

    /// Lower interval `[e, self]` of the weak order, elements sorted
    /// lexicographically.
    pub fn weak_interval(&self, cap: usize) -> Result<FinitePoset<Permutation>> {
        let e = Self::identity(self.n());
        let mut seen = HashSet::new();
        seen.insert(e.clone());
        let mut queue = VecDeque::from([e]);
        while let Some(p) = queue.pop_front() {
            for q in p.weak_covers_up() {
                if q.weak_leq_unchecked(self) && seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "weak interval", cap });
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Self> = seen.into_iter().collect();
        elements.sort();
        let index: std::collections::HashMap<&Self, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut arcs = Vec::new();
        for (i, p) in elements.iter().enumerate() {
            for q in p.weak_covers_up() {
                if let Some(&j) = index.get(&q) {
                    arcs.push((i, j));
                }
            }
        }
        FinitePoset::from_relation(elements, &arcs)
    }

    /// Text with values shifted down by one (pipes labelled from 0).
    pub fn to_zero_based_string(&self) -> String {
        let v: Vec<usize> = self.images.iter().map(|x| x - 1).collect();
        join_values(&v, self.n() <= 10)
    }
}

fn join_values(v: &[usize], compact: bool) -> String {
    if compact {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_values(&self.images, self.n() <= 9))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("{c:?}"))))
                .collect::<Result<_>>()?
        };
        if values.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Self::from_values(values)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("31542"), p("3,1,5,4,2"));
        assert_eq!(p("0,2,1,3"), p("1324"));
        assert_eq!(p("0213"), p("1324"));
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        let big = Permutation::longest(10);
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    #[test]
    fn inversions() {
        assert!(p("12345").inversion_set().is_empty());
        let expected: BTreeSet<_> = [(1, 3), (2, 3), (2, 4), (2, 5), (4, 5)].into_iter().collect();
        assert_eq!(p("31542").inversion_set(), expected);
        assert_eq!(p("21").inversion_set(), [(1, 2)].into_iter().collect());
    }

    #[test]
    fn weak_order() {
        assert!(!p("12543").weak_leq(&p("12345")).unwrap());
        // (1,2) is not an inversion of 31542
        assert!(!p("21345").weak_leq(&p("31542")).unwrap());
        assert!(p("13245").weak_leq(&p("31542")).unwrap());
        assert!(p("12").weak_leq(&p("123")).is_err());
        let ups: BTreeSet<_> = p("123").weak_covers_up().into_iter().collect();
        assert_eq!(ups, [p("213"), p("132")].into_iter().collect());
        assert!(p("321").weak_covers_up().is_empty());
        assert_eq!(p("231").weak_covers_up(), vec![p("321")]);
    }

    #[test]
    fn intervals() {
        assert_eq!(p("123").weak_interval(DEFAULT_CAP).unwrap().len(), 1);
        assert_eq!(p("321").weak_interval(DEFAULT_CAP).unwrap().len(), 6);
        let iv = p("31542").weak_interval(DEFAULT_CAP).unwrap();
        let ranks = iv.ranks();
        for (i, q) in iv.elements().iter().enumerate() {
            assert_eq!(ranks[i], q.length());
        }
        assert_eq!(*ranks.iter().max().unwrap(), 5);
        assert!(iv.is_lattice().is_lattice);
        assert!(p("4321").weak_interval(10).is_err());
    }

    #[test]
    fn nu_and_dominance() {
        assert_eq!(p("31542").noninversion_count(4), 2);
        for j in 1..=5 {
            assert_eq!(p("12345").noninversion_count(j), j - 1);
            assert_eq!(p("54321").noninversion_count(j), 0);
        }
        assert!(p("4321").is_dominant());
        assert!(!p("132").is_dominant());
        assert!(p("3421").is_dominant());
    }

    #[test]
    fn special_permutations() {
        assert_eq!(Permutation::reversing(3), p("14325"));
        assert_eq!(Permutation::reversing(3).to_zero_based_string(), "03214");
        assert_eq!(p("132").zero_prepended(), p("1243"));
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
