//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so the
//! lines come out in order with timings.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pipedreams::coxeter::{CoxWord, CoxeterSystem};
use pipedreams::perm::DEFAULT_CAP;
use pipedreams::report::Report;
use pipedreams::subword::scan::{self, ScanConfig, Target};
use pipedreams::subword::{Facet, SubwordComplex};
use pipedreams::{pdlattice, pipedream, Permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CAP: usize = DEFAULT_CAP;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t.elapsed() <= limit, || format!("{what} took {:.1?}, limit {limit:?}", t.elapsed()))
}

fn check_report(r: &Report) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{} fails {}: {}", r.omega, c.name, c.witness)),
    }
}

fn s5() -> Vec<Permutation> {
    Permutation::all(5)
}

fn catalan() -> Outcome {
    let t = Instant::now();
    let mut counts = Vec::new();
    for n in 1..=5 {
        let rho = Permutation::reversing(n);
        let all = pipedream::enumerate(&rho, false, CAP).map_err(|e| e.to_string())?.len();
        let acyclic = pipedream::enumerate(&rho, true, CAP).map_err(|e| e.to_string())?.len();
        ensure(all == acyclic, || format!("n={n}: |PD| = {all}, |APD| = {acyclic}"))?;
        counts.push(all);
    }
    ensure(counts == [1, 2, 5, 14, 42], || format!("counts {counts:?}"))?;
    within(t, Duration::from_secs(10), "Catalan counts")?;
    Ok(format!("{counts:?}"))
}

fn fig2_extensions() -> Outcome {
    let listed = ["0421356", "0423156", "0421536", "0423516", "0425136", "0425316", "0452136", "0452316"];
    let expected: BTreeSet<Permutation> = listed.iter().map(|s| p(s)).collect();
    let rho = Permutation::reversing(5);
    let dream = pdlattice::sweep(&p(listed[0]), &rho).map_err(|e| e.to_string())?;
    let got: BTreeSet<Permutation> = dream.linear_extensions(CAP).map_err(|e| e.to_string())?.into_iter().collect();
    ensure(got == expected, || format!("got {got:?}"))?;
    Ok(format!("{} extensions", got.len()))
}

fn non_lattices() -> Outcome {
    let t = Instant::now();
    let poset = pipedream::increasing_flip_graph(&p("12543"), false, CAP)
        .and_then(|g| g.poset())
        .map_err(|e| e.to_string())?;
    ensure(!poset.is_lattice().is_lattice, || "PD(12543) flip order is a lattice".into())?;
    within(t, Duration::from_secs(60), "PD(12543)")?;
    let t = Instant::now();
    let cmp = pdlattice::restriction_comparison(&p("126543"), CAP).map_err(|e| e.to_string())?;
    ensure(!cmp.induced.is_lattice().is_lattice, || "induced order on APD(126543) is a lattice".into())?;
    ensure(cmp.closure.is_lattice().is_lattice, || "acyclic flip closure is not a lattice".into())?;
    within(t, Duration::from_secs(60), "APD(126543)")?;
    Ok(format!("PD(12543) {} dreams; APD(126543) {} dreams, missing induced pairs: {}", poset.len(), cmp.closure.len(), cmp.missing.len()))
}

fn over_s(n: usize, limit: Duration, f: impl Fn(&Permutation) -> Result<(), String>) -> Outcome {
    let t = Instant::now();
    let all = if n == 5 { s5() } else { (1..=n).flat_map(Permutation::all).collect() };
    for w in &all {
        f(w)?;
    }
    within(t, limit, "scan")?;
    Ok(format!("{} permutations", all.len()))
}

fn report_of(r: pipedreams::Result<Report>) -> Result<(), String> {
    check_report(&r.map_err(|e| e.to_string())?)
}

fn theorem_a() -> Outcome {
    over_s(5, Duration::from_secs(600), |w| report_of(pdlattice::verify_theorem_a(w, CAP)))
}

fn algorithms() -> Outcome {
    over_s(5, Duration::from_secs(600), |w| report_of(pdlattice::verify_algorithms(w, CAP)))
}

fn rewriting() -> Outcome {
    over_s(5, Duration::from_secs(600), |w| report_of(pdlattice::verify_rewrite(w, CAP)))
}

fn canopy() -> Outcome {
    let g = pdlattice::recoil_graph(&p("31542"));
    ensure(g == [(4, 5)], || format!("recoil graph of 31542 is {g:?}"))?;
    over_s(5, Duration::from_secs(600), |w| report_of(pdlattice::verify_canopy(w, CAP)))
}

fn nu_tamari() -> Outcome {
    let dominant = s5().iter().filter(|w| w.is_dominant()).count();
    let r = over_s(5, Duration::from_secs(600), |w| {
        let acyclic = pdlattice::nu_acyclicity(w, CAP).map_err(|e| e.to_string())?;
        ensure(acyclic == w.is_dominant(), || format!("{w}: acyclic {acyclic}, dominant {}", w.is_dominant()))
    })?;
    Ok(format!("{r}, {dominant} dominant"))
}

fn coxeter() -> Outcome {
    let t = Instant::now();
    for (tag, order, pos) in [("A3", 24, 6), ("B3", 48, 9), ("D4", 192, 12), ("H3", 120, 15)] {
        let sys = CoxeterSystem::from_tag(tag, false).map_err(|e| e.to_string())?;
        let g = sys.group(CAP).map_err(|e| e.to_string())?;
        ensure(g.len() == order && sys.positive_count() == pos, || {
            format!("{tag}: |W| = {}, |Phi+| = {}", g.len(), sys.positive_count())
        })?;
        let weak = g.weak_order();
        ensure(weak.is_lattice().is_lattice, || format!("{tag}: weak order is not a lattice"))?;
        let top = g.index_of(&sys.longest_element());
        ensure(weak.maximal_elements() == top.into_iter().collect::<Vec<_>>(), || format!("{tag}: top is not w0"))?;
    }
    within(t, Duration::from_secs(60), "Coxeter engine")?;
    Ok("A3 B3 D4 H3".into())
}

fn complex(tag: &str, word: &str, omega: &str) -> Result<SubwordComplex, String> {
    SubwordComplex::parse(tag, word, omega).map_err(|e| e.to_string())
}

fn f(s: &str) -> Facet {
    s.parse().unwrap()
}

fn subword_fixtures() -> Outcome {
    let hex = complex("A2", "1,2,1,2,1,2", "w0")?;
    let a = hex.analyze(CAP).map_err(|e| e.to_string())?;
    ensure(a.facets.len() == 8, || format!("{} facets in the A2 hexagon word", a.facets.len()))?;
    let cyclic: BTreeSet<Facet> = (0..a.facets.len()).filter(|&i| !a.is_acyclic(i)).map(|i| a.facets[i]).collect();
    ensure(cyclic == [f("1,2,6"), f("1,5,6")].into(), || format!("cyclic facets {cyclic:?}"))?;
    let part = a.equivalence_partition();
    let quotient = part.poset.quotient(&part.blocks).map_err(|e| e.to_string())?;
    let covers: BTreeSet<(Facet, Facet)> =
        quotient.covers().iter().map(|&(x, y)| (part.facets[x], part.facets[y])).collect();
    let flip = hex.flip(f("1,3,4"), 0).map_err(|e| e.to_string())?;
    ensure(flip.to == f("3,4,6") && !covers.contains(&(flip.from, flip.to)), || "{1,3,4} -> {3,4,6} is a cover".into())?;

    let cambrian = complex("A3", "2,1,3,2,1,3,2,1,3", "w0")?.analyze(CAP).map_err(|e| e.to_string())?;
    let order = cambrian.increasing_flip_poset(false).map_err(|e| e.to_string())?;
    ensure(cambrian.facets.len() == 14 && order.is_lattice().is_lattice, || "Cambrian word".into())?;

    let bad = complex("A3", "1,2,3,2,1,2,3,2,1", "w0")?.analyze(CAP).map_err(|e| e.to_string())?;
    let order = bad.increasing_flip_poset(false).map_err(|e| e.to_string())?;
    let ix = |s: &str| order.index_of(&f(s)).ok_or_else(|| format!("{s} is not a facet"));
    ensure(bad.facets.len() == 12, || format!("{} facets", bad.facets.len()))?;
    ensure(order.try_join(ix("1,3,4")?, ix("1,2,9")?).is_none(), || "join exists".into())?;
    ensure(order.try_meet(ix("1,8,9")?, ix("6,7,9")?).is_none(), || "meet exists".into())?;
    ensure(!order.is_lattice().is_lattice, || "non-lattice word gives a lattice".into())?;
    Ok("hexagon 8 facets, Cambrian 14, non-lattice 12".into())
}

/// Theorem B on one complex, and Theorem C when the word is sorting.
fn partition_and_cones(cx: &SubwordComplex) -> Result<bool, String> {
    let a = cx.analyze(CAP).map_err(|e| e.to_string())?;
    check_report(&a.verify_thm_b())?;
    let sorting = cx.system().is_sorting(cx.word()).map_err(|e| e.to_string())?;
    if sorting {
        check_report(&a.verify_thm_c().map_err(|e| e.to_string())?)?;
    }
    Ok(sorting)
}

fn theorem_b() -> Outcome {
    let t = Instant::now();
    let (mut pairs, mut sorting) = (0, 0);
    for tag in ["A2", "B2"] {
        let sys = CoxeterSystem::from_tag(tag, false).map_err(|e| e.to_string())?;
        let g = sys.group(CAP).map_err(|e| e.to_string())?;
        for q in scan::all_words(sys.rank(), 8) {
            for w in g.elements() {
                if sys.contains_reduced_word(&q.0, w) {
                    let cx = SubwordComplex::new(sys.clone(), q.clone(), w.clone()).map_err(|e| e.to_string())?;
                    sorting += usize::from(partition_and_cones(&cx)?);
                    pairs += 1;
                }
            }
        }
    }
    let sys = CoxeterSystem::from_tag("A3", false).map_err(|e| e.to_string())?;
    let g = sys.group(CAP).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sampled = 0;
    while sampled < 200 {
        let len = rng.random_range(0..=10);
        let q = CoxWord((0..len).map(|_| rng.random_range(0..sys.rank())).collect());
        let below: Vec<_> = g.elements().iter().filter(|w| sys.contains_reduced_word(&q.0, w)).collect();
        let w = below[rng.random_range(0..below.len())];
        let cx = SubwordComplex::new(sys.clone(), q, w.clone()).map_err(|e| e.to_string())?;
        sorting += usize::from(partition_and_cones(&cx)?);
        sampled += 1;
    }
    Ok(format!("{pairs} exhaustive pairs, {sampled} A3 samples, {sorting} sorting ({:.1?})", t.elapsed()))
}

fn fig9() -> Outcome {
    let a = complex("A4", "3,4,1,3,2,4,1,2", "24153")?.analyze(CAP).map_err(|e| e.to_string())?;
    let witness: Vec<Facet> =
        (0..a.facets.len()).filter(|&i| a.strong_extensions(i).is_empty()).map(|i| a.facets[i]).collect();
    ensure(!witness.is_empty(), || "every facet meets [e, w]".into())?;
    Ok(format!("facets {}", witness.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
}

fn conjecture_scan(sys: &Arc<CoxeterSystem>, samples: Option<usize>) -> Result<scan::ScanSummary, String> {
    let mut config = ScanConfig::new(sys.positive_count());
    config.target = Target::Both;
    config.samples = samples;
    config.seed = 2024;
    let summary = scan::run(sys, &config, &mut std::io::sink()).map_err(|e| e.to_string())?;
    ensure(summary.failures == 0, || summary.statement())?;
    Ok(summary)
}

fn conjectures() -> Outcome {
    let b2 = CoxeterSystem::from_tag("B2", false).map_err(|e| e.to_string())?;
    let b3 = CoxeterSystem::from_tag("B3", false).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let s2 = conjecture_scan(&b2, None)?;
    within(t, Duration::from_secs(300), "B2 exhaustive")?;
    let t = Instant::now();
    let s3 = conjecture_scan(&b3, None)?;
    within(t, Duration::from_secs(7200), "B3 exhaustive")?;
    let t3 = t.elapsed();
    let t = Instant::now();
    let sampled = conjecture_scan(&b3, Some(10_000))?;
    within(t, Duration::from_secs(600), "B3 sampled")?;
    Ok(format!(
        "B2 {} words/{} pairs; B3 {} words/{} pairs in {t3:.1?}; B3 sampled {} words in {:.1?}",
        s2.words,
        s2.pairs,
        s3.words,
        s3.pairs,
        sampled.words,
        t.elapsed()
    ))
}

fn sweep_roundtrip() -> Outcome {
    let mut checked = 0;
    for tag in ["A2", "B2"] {
        let sys = CoxeterSystem::from_tag(tag, false).map_err(|e| e.to_string())?;
        let g = sys.group(CAP).map_err(|e| e.to_string())?;
        for q in scan::all_words(sys.rank(), 8) {
            for w in g.elements() {
                if !sys.contains_reduced_word(&q.0, w) {
                    continue;
                }
                let cx = SubwordComplex::new(sys.clone(), q.clone(), w.clone()).map_err(|e| e.to_string())?;
                let a = cx.analyze(CAP).map_err(|e| e.to_string())?;
                for (i, facet) in a.facets.iter().enumerate() {
                    for &x in &a.extensions[i] {
                        let got = cx.sweep(g.element(x)).map_err(|e| e.to_string())?;
                        ensure(got == *facet, || {
                            format!("{tag} Q={q} w={}: sweep gives {got}, expected {facet}", sys.format_element(w))
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (facet, extension) pairs"))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("Catalan counts", catalan),
        ("reversing pipe dream extensions", fig2_extensions),
        ("non-lattice witnesses", non_lattices),
        ("congruence over S_5", theorem_a),
        ("insertion equals sweep", algorithms),
        ("rewriting rule", rewriting),
        ("canopy and recoils", canopy),
        ("dominant iff all acyclic", nu_tamari),
        ("Coxeter engine", coxeter),
        ("subword fixtures", subword_fixtures),
        ("subword partition and root cones", theorem_b),
        ("facet missing the interval", fig9),
        ("conjecture harness", conjectures),
        ("sweep round trip", sweep_roundtrip),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{secs:.2}s] {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{secs:.2}s] {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
