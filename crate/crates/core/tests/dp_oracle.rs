mod common;

use std::collections::BTreeSet;

use fevac::cayley::{boundary_report, GenAlphabet};
use fevac::counting::CountTable;
use fevac::fgroup::{generator_x, x0, x1, FElement, Generator};
use fevac::forests::{act, bb_automaton, enumerate_bb, find_y0, is_y0, GenLetter, MarkedForest, DEFAULT_BUDGET};
use num_bigint::BigUint;
use proptest::prelude::*;

fn oracle_forest(f: &MarkedForest) -> common::Forest {
    common::Forest { trees: f.trees().iter().map(|t| t.encode()).collect(), mark: f.mark() }
}

#[test]
fn enumeration_matches_oracle() {
    for k in 0..=3 {
        for n in 1..=7 {
            let ours: BTreeSet<String> = enumerate_bb(n, k, DEFAULT_BUDGET).unwrap().iter().map(|f| f.encode()).collect();
            let theirs: BTreeSet<String> = common::marked_forests(n, k).iter().map(|f| f.key()).collect();
            assert_eq!(ours, theirs, "BB({n},{k})");
        }
    }
}

#[test]
fn action_matches_oracle() {
    for k in 1..=3 {
        for n in 1..=6 {
            for f in enumerate_bb(n, k, DEFAULT_BUDGET).unwrap() {
                let g = oracle_forest(&f);
                for gen in Generator::ALL {
                    for inv in [false, true] {
                        let ours = act(GenLetter::new(gen, inv), &f, k).map(|h| h.encode());
                        let theirs = common::apply(gen.name(), inv, &g, k).map(|h| h.key());
                        assert_eq!(ours, theirs, "{}{} on {f}", gen.name(), if inv { "^-1" } else { "" });
                    }
                }
            }
        }
    }
}

#[test]
fn counts_match_oracle() {
    for k in 0..=3 {
        let table = CountTable::new(k, 8);
        for n in 1..=8 {
            let o = common::counts(n, k);
            assert_eq!(table.bb_count(n).unwrap(), BigUint::from(o.size));
            assert_eq!(table.y0_count(n).unwrap(), BigUint::from(o.y0));
            for g in Generator::ALL {
                for inv in [false, true] {
                    assert_eq!(table.nu(n, g, inv).unwrap(), BigUint::from(o.nu[&(g.name().to_string(), inv)]));
                }
            }
        }
    }
}

#[test]
fn automaton_nu_matches_oracle() {
    for spec in common::ALPHABETS {
        let a = GenAlphabet::parse(spec).unwrap();
        for k in 0..=3 {
            for n in 1..=7 {
                let o = common::counts(n, k);
                let rep = boundary_report(&bb_automaton(n, k, &a).unwrap()).unwrap();
                assert_eq!(rep.size, o.size);
                for l in a.letters() {
                    let (g, inv) = a.generator(l).unwrap();
                    assert_eq!(rep.nu[l.0].1, o.nu[&(g.name().to_string(), inv)], "{spec} BB({n},{k}) {}", a.letter_name(l));
                }
            }
        }
    }
}

#[test]
fn y0_vertices_and_degrees() {
    let pair = GenAlphabet::parse("x1,xb1").unwrap();
    let triple = GenAlphabet::parse("x0,x1,xb1").unwrap();
    for k in 1..=2 {
        for n in 3..=8 {
            let y0 = find_y0(n, k).unwrap();
            let oracle: BTreeSet<String> =
                common::marked_forests(n, k).iter().filter(|f| common::is_y0(f, k)).map(|f| f.key()).collect();
            assert_eq!(y0.iter().map(|f| f.encode()).collect::<BTreeSet<_>>(), oracle);
            let (yp, yt) = (bb_automaton(n, k, &pair).unwrap(), bb_automaton(n, k, &triple).unwrap());
            for f in &y0 {
                assert!(is_y0(f, k));
                let key = f.encode();
                assert_eq!(yp.degree(yp.vertex(&key).unwrap()), 0);
                assert_eq!(yt.degree(yt.vertex(&key).unwrap()), 2);
            }
        }
    }
}

#[test]
fn group_relations() {
    for j in 1..=6 {
        for i in 0..j {
            assert_eq!(generator_x(j).multiply(&generator_x(i)), generator_x(i).multiply(&generator_x(j + 1)));
        }
    }
}

fn element(word: &[(bool, bool)]) -> FElement {
    word.iter().fold(FElement::identity(), |acc, &(one, inv)| {
        let g = if one { x1() } else { x0() };
        acc.multiply(&if inv { g.invert() } else { g })
    })
}

fn word() -> impl Strategy<Value = Vec<(bool, bool)>> {
    prop::collection::vec((any::<bool>(), any::<bool>()), 0..=10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in word(), b in word(), c in word()) {
        let (a, b, c) = (element(&a), element(&b), element(&c));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn inverse_cancels(a in word()) {
        let a = element(&a);
        prop_assert!(a.multiply(&a.invert()).is_identity());
        let back: FElement = a.encode().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn accepted_letters_are_undone(n in 1usize..=7, k in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let all = enumerate_bb(n, k, DEFAULT_BUDGET).unwrap();
        let f = &all[pick.index(all.len())];
        for gen in Generator::ALL {
            for inv in [false, true] {
                let l = GenLetter::new(gen, inv);
                if let Some(g) = act(l, f, k) {
                    prop_assert_eq!(g.leaf_count(), n);
                    prop_assert!(g.max_height() <= k);
                    let back = act(l.inv(), &g, k);
                    prop_assert_eq!(back.as_ref(), Some(f));
                }
            }
        }
    }
}
