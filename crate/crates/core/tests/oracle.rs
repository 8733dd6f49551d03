mod common;

use std::collections::BTreeSet;

use common::{arb_simple, letter, p};
use idre::oracle::{
    continuing_oracle, determinism_oracle, enumerate, first_exact, first_oracle, flexible_exact, flexible_oracle,
    followlast_exact, followlast_oracle, membership, shuffle_words, word_to_string, Answer, Determinism, FlexReading,
    OracleBounds,
};
use idre::{Letter, Path};
use proptest::prelude::*;

fn words(e: &str, n: usize) -> BTreeSet<String> {
    enumerate(&p(e), n).unwrap().words.iter().map(|w| word_to_string(w)).collect()
}

fn w(s: &str) -> Vec<Letter> {
    s.chars().map(letter).collect()
}

#[test]
fn shuffle_language_example() {
    let expected: BTreeSet<String> =
        ["abcd", "acbd", "acdb", "cabd", "cadb", "cdab", "abe", "aeb", "eab"].iter().map(|s| s.to_string()).collect();
    assert_eq!(words("(ab)&(cd+e)", 4), expected);
    assert!(membership(&p("(ab)&(cd+e)"), &w("abe")));
    assert!(!membership(&p("(ab)&(cd+e)"), &w("bae")));
}

#[test]
fn shuffle_of_words() {
    assert_eq!(shuffle_words(&w("ab"), &w("cd")).len(), 6);
    assert_eq!(shuffle_words(&w("aa"), &w("a")).len(), 1);
    assert_eq!(shuffle_words(&w(""), &w("ab")).len(), 1);
}

#[test]
fn counters_unroll() {
    assert_eq!(words("a[2,3]", 5), ["aa", "aaa"].iter().map(|s| s.to_string()).collect());
    assert_eq!(words("(ab)[0,inf]", 4), ["ε", "ab", "abab"].iter().map(|s| s.to_string()).collect());
    assert!(membership(&p("(a[1,2]+b)[2,2]"), &w("aab")));
    assert!(!membership(&p("(a[1,2]+b)[2,2]"), &w("aaaaa")));
}

#[test]
fn oracle_witness_for_the_interleaving_example() {
    match determinism_oracle(&p("(a?&b)a"), OracleBounds::new(6)) {
        Determinism::Violation(wit) => {
            assert_eq!(wit.x.letter, letter('a'));
            assert_eq!(wit.y.letter, letter('a'));
            assert_ne!(wit.x, wit.y);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(determinism_oracle(&p("(a?&b)c"), OracleBounds::new(6)), Determinism::Deterministic);
    assert_eq!(determinism_oracle(&p("a*a"), OracleBounds::new(6)).known(), Some(false));
}

#[test]
fn flexible_examples() {
    let root = Path::root();
    for reading in [FlexReading::Intrinsic, FlexReading::InContext] {
        let b = OracleBounds::new(10);
        assert_eq!(flexible_oracle(&p("(a[1,2]+b)[2,2]"), &root, b, reading).unwrap(), Answer::True);
        assert_eq!(flexible_oracle(&p("(a[2,3]+b)[2,2]"), &root, b, reading).unwrap(), Answer::False);
    }
    assert!(flexible_exact(&p("(a[1,2]+b)[2,2]")).unwrap());
    assert!(!flexible_exact(&p("(a[2,3]+b)[2,2]")).unwrap());
    assert!(flexible_exact(&p("a[1,3]")).unwrap());
    assert!(!flexible_exact(&p("(ab)[2,2]")).unwrap());
}

#[test]
fn continuing_examples() {
    let b = OracleBounds::new(12);
    let star = p("(ab)*c");
    assert_eq!(continuing_oracle(&star, &"/0/0".parse().unwrap(), b).unwrap(), Answer::True);
    assert_eq!(continuing_oracle(&p("abc"), &"/0".parse().unwrap(), b).unwrap(), Answer::False);
    assert!(continuing_oracle(&star, &"/9".parse().unwrap(), b).is_err());
}

#[test]
fn first_and_followlast_by_enumeration() {
    let e = p("(a?&b)a");
    let (f, complete) = first_oracle(&e, OracleBounds::new(6)).unwrap();
    assert!(complete);
    assert_eq!(f, [letter('a'), letter('b')].into_iter().collect());
    assert_eq!(first_exact(&e).unwrap(), f);
    let e = p("(ab)*");
    assert_eq!(followlast_exact(&e).unwrap(), [letter('a')].into_iter().collect());
    let (fl, _) = followlast_oracle(&e, OracleBounds::new(8)).unwrap();
    assert_eq!(fl, [letter('a')].into_iter().collect());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn membership_agrees_with_enumeration(e in arb_simple(2)) {
        let lang = enumerate(&e, 4).unwrap();
        for n in 0..=4usize {
            for i in 0..(1usize << n) {
                let word: Vec<Letter> = (0..n).map(|j| Letter::new((i >> j) & 1).unwrap()).collect();
                prop_assert_eq!(membership(&e, &word), lang.contains(&word), "{}", word_to_string(&word));
            }
        }
    }

    #[test]
    fn exact_and_bounded_first_agree(e in arb_simple(3)) {
        let (f, complete) = first_oracle(&e, OracleBounds::new(8)).unwrap();
        let exact = first_exact(&e).unwrap();
        prop_assert!(f.is_subset(&exact));
        if complete {
            prop_assert_eq!(f, exact);
        }
    }
}
