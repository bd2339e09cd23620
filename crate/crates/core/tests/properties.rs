use std::sync::Arc;

use proptest::prelude::*;

use pipedreams::coxeter::field::Q5;
use pipedreams::coxeter::{CoxWord, CoxeterSystem};
use pipedreams::perm::DEFAULT_CAP;
use pipedreams::subword::SubwordComplex;
use pipedreams::{pdlattice, pipedream, Permutation};

const TAGS: [&str; 5] = ["A2", "B2", "I2(5)", "A3", "B3"];

fn system(tag: &str) -> Arc<CoxeterSystem> {
    CoxeterSystem::from_tag(tag, false).unwrap()
}

fn word_in(rank: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..=max)
}

/// A type tag with a word of length at most `max` over its generators.
fn typed_word(max: usize) -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    prop::sample::select(TAGS.to_vec()).prop_flat_map(move |tag| {
        let rank = system(tag).rank();
        (Just(tag), word_in(rank, max))
    })
}

/// A non-empty complex: the word plus an element picked among those it contains.
fn complex(max: usize) -> impl Strategy<Value = SubwordComplex> {
    (typed_word(max), any::<prop::sample::Index>()).prop_map(|((tag, q), pick)| {
        let sys = system(tag);
        let g = sys.group(DEFAULT_CAP).unwrap();
        let below: Vec<_> = g.elements().iter().filter(|w| sys.contains_reduced_word(&q, w)).collect();
        let w = below[pick.index(below.len())].clone();
        SubwordComplex::new(sys, CoxWord(q), w).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn contains_reduced_word_matches_subsets((tag, q) in typed_word(8), pick in any::<prop::sample::Index>()) {
        let sys = system(tag);
        let g = sys.group(DEFAULT_CAP).unwrap();
        let w = g.element(pick.index(g.len()));
        let brute = (0u32..1 << q.len()).any(|mask| {
            let sub = CoxWord((0..q.len()).filter(|&k| mask >> k & 1 == 1).map(|k| q[k]).collect());
            sys.is_reduced(&sub).unwrap() && sys.element(&sub).unwrap() == *w
        });
        prop_assert_eq!(sys.contains_reduced_word(&q, w), brute);
    }

    #[test]
    fn demazure_product_is_the_largest_contained((tag, q) in typed_word(8)) {
        let sys = system(tag);
        let g = sys.group(DEFAULT_CAP).unwrap();
        let dem = sys.demazure_product(&CoxWord(q.clone())).unwrap();
        prop_assert!(sys.contains_reduced_word(&q, &dem));
        for w in g.elements() {
            if sys.contains_reduced_word(&q, w) {
                prop_assert!(sys.length(w) <= sys.length(&dem));
            }
        }
    }

    #[test]
    fn length_is_subadditive((tag, a) in typed_word(10), b in word_in(3, 10)) {
        let sys = system(tag);
        let b: Vec<usize> = b.into_iter().map(|s| s % sys.rank()).collect();
        let u = sys.element(&CoxWord(a)).unwrap();
        let v = sys.element(&CoxWord(b)).unwrap();
        let uv = sys.mul(&u, &v);
        let (lu, lv, luv) = (sys.length(&u), sys.length(&v), sys.length(&uv));
        prop_assert!(luv <= lu + lv);
        prop_assert_eq!((lu + lv - luv) % 2, 0);
        prop_assert_eq!(sys.length(&sys.inverse(&u)), lu);
        prop_assert_eq!(sys.reduced_word(&u).0.len(), lu);
        prop_assert_eq!(sys.element(&sys.reduced_word(&u)).unwrap(), u);
    }

    #[test]
    fn golden_field_matches_floats(a in -50i128..50, b in -50i128..50, c in -50i128..50, d in 1i128..50) {
        let x = Q5::int(a) + Q5::int(b) * Q5::phi();
        let y = Q5::int(c) + Q5::phi() / Q5::int(d);
        let close = |q: Q5, f: f64| (q.to_f64() - f).abs() < 1e-6 * (1.0 + f.abs());
        prop_assert!(close(x + y, x.to_f64() + y.to_f64()));
        prop_assert!(close(x * y, x.to_f64() * y.to_f64()));
        prop_assert!(close(x - y, x.to_f64() - y.to_f64()));
        if !y.is_zero() {
            prop_assert!(close(x / y, x.to_f64() / y.to_f64()));
        }
        prop_assert_eq!(x < y, x.to_f64() < y.to_f64());
    }

    #[test]
    fn flips_follow_the_update_rule(sc in complex(8)) {
        for facet in sc.facets(DEFAULT_CAP).unwrap() {
            for flip in sc.flips(facet).unwrap() {
                prop_assert!(sc.is_facet(flip.to));
                prop_assert!(sc.flip_update_rule_holds(&flip).unwrap(), "{} {:?}", sc.describe(), flip);
                prop_assert_eq!(flip.increasing, flip.i < flip.j);
                let back = sc.flip(flip.to, flip.j).unwrap();
                prop_assert_eq!(back.to, facet);
            }
        }
    }

    #[test]
    fn first_difference_root_lies_in_cone(sc in complex(7)) {
        let facets = sc.facets(DEFAULT_CAP).unwrap();
        for &a in &facets {
            for &b in &facets {
                if a != b {
                    prop_assert_eq!(sc.first_difference_cone(a, b).unwrap(), Some(true), "{} {} {}", sc.describe(), a, b);
                }
            }
        }
    }

    #[test]
    fn descending_keeps_extensions(sc in complex(8)) {
        let sys = sc.system().clone();
        let a = sc.analyze(DEFAULT_CAP).unwrap();
        for (f, facet) in a.facets.iter().enumerate() {
            for x in a.strong_extensions(f) {
                let pi = a.group.element(x);
                for s in (0..sys.rank()).filter(|&s| sys.is_right_descent(pi, s)) {
                    let lower = sc.descend(*facet, pi, s).unwrap();
                    let y = a.group.index_of(&sys.mul_generator(pi, s)).unwrap();
                    prop_assert!(a.extensions[a.facet_index(lower).unwrap()].contains(&y));
                }
            }
        }
    }

    #[test]
    fn sweep_inverts_extensions(sc in complex(8)) {
        let a = sc.analyze(DEFAULT_CAP).unwrap();
        for (f, facet) in a.facets.iter().enumerate() {
            for &x in &a.extensions[f] {
                prop_assert_eq!(sc.sweep(a.group.element(x)).unwrap(), *facet);
            }
        }
    }

    #[test]
    fn extension_sets_partition_the_interval(sc in complex(8)) {
        let a = sc.analyze(DEFAULT_CAP).unwrap();
        let mut seen: Vec<usize> = (0..a.facets.len()).flat_map(|f| a.strong_extensions(f)).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, a.interval.clone());
    }

    #[test]
    fn pipe_dreams_round_trip(w in (1usize..=5).prop_flat_map(permutation)) {
        let dreams = pipedream::enumerate(&w, false, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&dreams[0], &pipedream::greedy(&w));
        for p in &dreams {
            prop_assert_eq!(&pipedreams::PipeDream::from_json(&p.to_json()).unwrap(), p);
            prop_assert_eq!(&pipedreams::PipeDream::from_ascii(&p.to_ascii()).unwrap(), p);
            for q in p.increasing_flips() {
                prop_assert!(dreams.contains(&q));
            }
        }
    }

    #[test]
    fn insertion_lands_on_an_extension(w in permutation(6), pi in permutation(6)) {
        if pi.weak_leq(&w).unwrap() {
            let p = pdlattice::insert(&pi, &w).unwrap();
            prop_assert!(p.is_acyclic());
            prop_assert!(p.linear_extensions(DEFAULT_CAP).unwrap().contains(&pi));
            prop_assert_eq!(pdlattice::sweep(&pi, &w).unwrap(), p);
        } else {
            prop_assert!(pdlattice::insert(&pi, &w).is_err());
        }
    }

    #[test]
    fn weak_order_agrees_with_inversions(a in permutation(5), b in permutation(5)) {
        let leq = a.inversion_set().is_subset(&b.inversion_set());
        prop_assert_eq!(a.weak_leq(&b).unwrap(), leq);
        prop_assert_eq!(a.length(), a.inversion_set().len());
        prop_assert_eq!(a.inverse().inverse(), a);
    }
}
