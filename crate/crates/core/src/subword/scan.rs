//! Exhaustive and sampled scans of the congruence and quotient conjectures
//! over alternating words.

use std::io::Write;
use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::SubwordComplex;
use crate::coxeter::{CoxWord, CoxeterSystem};
use crate::error::{Error, Result};

/// Which conjectures a scan evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    A,
    B,
    Both,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub max_len: usize,
    pub target: Target,
    /// Sample this many words instead of enumerating.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Skip words up to and including this one.
    pub resume_from: Option<CoxWord>,
    pub cap: usize,
    pub chunk: usize,
}

impl ScanConfig {
    pub fn new(max_len: usize) -> Self {
        Self { max_len, target: Target::Both, samples: None, seed: 0, resume_from: None, cap: 1_000_000, chunk: 64 }
    }
}

/// One JSON line per `(Q, w)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct ScanLine {
    #[serde(rename = "type")]
    pub cartan_type: String,
    #[serde(rename = "Q")]
    pub word: String,
    pub omega: String,
    #[serde(rename = "conjA")]
    pub conj_a: bool,
    #[serde(rename = "conjB")]
    pub conj_b: bool,
    pub facets: usize,
    pub acyclic: usize,
    pub strongly_acyclic: usize,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub words: usize,
    pub pairs: usize,
    pub failures: usize,
    pub last_word: Option<String>,
}

impl ScanSummary {
    pub fn statement(&self) -> String {
        if self.failures == 0 {
            format!("no counterexample within scanned space ({} words, {} pairs)", self.words, self.pairs)
        } else {
            format!("{} counterexamples among {} pairs ({} words)", self.failures, self.pairs, self.words)
        }
    }
}

fn extends_alternating(sys: &CoxeterSystem, word: &[usize], s: usize) -> bool {
    let m = sys.coxeter_matrix();
    (0..sys.rank()).filter(|&t| t != s && m[s][t] >= 3).all(|t| {
        word.iter().rev().find(|&&x| x == s || x == t) != Some(&s)
    })
}

/// Alternating words of length at most `max_len`, by length then
/// lexicographically.
pub fn alternating_words(sys: &CoxeterSystem, max_len: usize) -> Vec<CoxWord> {
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut out: Vec<CoxWord> = vec![CoxWord::default()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for s in 0..sys.rank() {
                if extends_alternating(sys, w, s) {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(CoxWord));
        level = next;
    }
    out
}

/// Every word on `rank` letters of length at most `max_len`, by length then
/// lexicographically.
pub fn all_words(rank: usize, max_len: usize) -> Vec<CoxWord> {
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut out = vec![CoxWord::default()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| {
                (0..rank).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(level.iter().cloned().map(CoxWord));
    }
    out
}

/// A random alternating word of length `len`: each letter is drawn uniformly
/// from the letters that keep the word alternating.
pub fn random_alternating_word(sys: &CoxeterSystem, len: usize, rng: &mut impl rand::Rng) -> CoxWord {
    let mut w = Vec::with_capacity(len);
    for _ in 0..len {
        let allowed: Vec<usize> = (0..sys.rank()).filter(|&s| extends_alternating(sys, &w, s)).collect();
        w.push(allowed[rng.random_range(0..allowed.len())]);
    }
    CoxWord(w)
}

/// Lines for every `w` with `SC(Q, w)` non-empty.
pub fn scan_word(sys: &Arc<CoxeterSystem>, word: &CoxWord, target: Target, cap: usize) -> Result<Vec<ScanLine>> {
    let group = sys.group(cap)?;
    let mut lines = Vec::new();
    for w in group.elements() {
        if !sys.contains_reduced_word(&word.0, w) {
            continue;
        }
        let sc = SubwordComplex::new(sys.clone(), word.clone(), w.clone())?;
        let a = sc.analyze(cap)?;
        let (ra, rb) = a.conjectures()?;
        let conj_a = target == Target::B || ra.pass();
        let conj_b = target == Target::A || rb.pass();
        let witness = if !conj_a {
            ra.first_failure().map_or(Value::Null, |c| c.witness.clone())
        } else if !conj_b {
            rb.first_failure().map_or(Value::Null, |c| c.witness.clone())
        } else {
            Value::Null
        };
        lines.push(ScanLine {
            cartan_type: sys.cartan_type().to_string(),
            word: word.to_string(),
            omega: sys.format_element(w),
            conj_a,
            conj_b,
            facets: a.facets.len(),
            acyclic: a.acyclic_count(),
            strongly_acyclic: a.strongly_acyclic_count(),
            witness,
        });
    }
    Ok(lines)
}

/// Runs the scan, writing JSON lines in a fixed order regardless of the
/// thread count.
pub fn run(sys: &Arc<CoxeterSystem>, config: &ScanConfig, out: &mut impl Write) -> Result<ScanSummary> {
    if !sys.cartan_type().is_large() && config.max_len > 64 {
        return Err(Error::Precondition("max length above 64".to_string()));
    }
    sys.group(config.cap)?;
    let mut words = match config.samples {
        None => alternating_words(sys, config.max_len),
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            (0..n)
                .map(|_| {
                    let len = rng.random_range(0..=config.max_len);
                    random_alternating_word(sys, len, &mut rng)
                })
                .collect()
        }
    };
    if let Some(cursor) = &config.resume_from {
        let at = words
            .iter()
            .position(|w| w == cursor)
            .ok_or_else(|| Error::InvalidWord(format!("resume cursor {cursor} not in scan")))?;
        words.drain(..=at);
    }
    let mut summary = ScanSummary::default();
    for chunk in words.chunks(config.chunk.max(1)) {
        let results: Vec<Result<Vec<ScanLine>>> =
            chunk.par_iter().map(|w| scan_word(sys, w, config.target, config.cap)).collect();
        for (w, lines) in chunk.iter().zip(results) {
            for line in lines? {
                summary.pairs += 1;
                if !(line.conj_a && line.conj_b) {
                    summary.failures += 1;
                }
                let text = serde_json::to_string(&line).expect("scan line json");
                writeln!(out, "{text}").map_err(|e| Error::Io(e.kind(), e.to_string()))?;
            }
            summary.words += 1;
            summary.last_word = Some(w.to_string());
        }
        out.flush().map_err(|e| Error::Io(e.kind(), e.to_string()))?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_words() {
        let sys = CoxeterSystem::from_tag("B2", false).unwrap();
        let words: Vec<String> = alternating_words(&sys, 4).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["", "1", "2", "1,2", "2,1", "1,2,1", "2,1,2", "1,2,1,2", "2,1,2,1"]);
    }

    #[test]
    fn commuting_letters_repeat() {
        let sys = CoxeterSystem::from_tag("A3", false).unwrap();
        let words = alternating_words(&sys, 2);
        assert!(words.contains(&CoxWord(vec![0, 2])));
        assert!(!words.contains(&CoxWord(vec![0, 0])));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = random_alternating_word(&sys, 9, &mut rng);
            assert!(sys.is_alternating(&w));
        }
    }

    #[test]
    fn b2_scan_and_resume() {
        let sys = CoxeterSystem::from_tag("B2", false).unwrap();
        let mut out = Vec::new();
        let summary = run(&sys, &ScanConfig::new(4), &mut out).unwrap();
        assert_eq!(summary.failures, 0);
        assert_eq!(summary.words, 9);
        let text = String::from_utf8(out).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"type":"B2","Q":"","omega":"e","conjA":true,"conjB":true,"facets":1,"acyclic":1,"strongly_acyclic":1}"#
        );
        let mut config = ScanConfig::new(4);
        config.resume_from = Some(CoxWord(vec![1, 0, 1]));
        let mut tail = Vec::new();
        let rest = run(&sys, &config, &mut tail).unwrap();
        assert_eq!(rest.words, 2);
        assert!(text.ends_with(std::str::from_utf8(&tail).unwrap()));
    }
}
