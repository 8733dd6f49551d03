mod common;

use common::{p, Corpus};
use idre::attrs::AttributedTree;
use idre::checker::determ_w;
use idre::grammar::{
    build, build_with, combine, counter_subgrammar_expand, decode_counter, derivable, export, expr_key, fixpoint_productive,
    lemma_useful_keys, stats, BuildError, BuildOptions, Class, CountHead, CounterWord, FragmentError, Key, Variant,
};
use idre::Expr;

const A: u32 = 1;
const B: u32 = 2;

fn key_of(text: &str, variant: Variant) -> Key {
    let t = AttributedTree::new(&p(text));
    expr_key(t.root(), variant)
}

#[test]
fn combine_examples() {
    let a = Key::new(A, 0, A, false, true);
    let b = Key::new(B, 0, B, false, true);
    let heads = combine(Class::Inter, a, Some(b), Variant::G1);
    assert_eq!(heads.as_slice(), &[Key::new(A | B, 0, A | B, false, true)]);
    assert!(combine(Class::Union, a, Some(a), Variant::G1).is_empty());
    let aa = combine(Class::Concat, a, Some(a), Variant::G1);
    assert_eq!(aa.as_slice(), &[key_of("aa", Variant::G1)]);
    assert_eq!(aa.as_slice(), &[Key::new(A, 0, A, false, true)]);
}

#[test]
fn second_variant_concat_yields_both_flags_when_admitted() {
    let a0 = Key::new(A, 0, A, false, false);
    let b0 = Key::new(B, 0, B, false, false);
    let heads = combine(Class::Concat, a0, Some(b0), Variant::G2);
    let flags: Vec<bool> = heads.as_slice().iter().map(|k| k.flag).collect();
    assert_eq!(flags, vec![false, true]);
}

#[test]
fn usefulness_examples() {
    use idre::grammar::useful;
    assert!(useful(&Key::new(A, 0, A, false, true)));
    assert!(!useful(&Key::new(0, 0, 0, true, true)));
    assert!(!useful(&Key::new(A, A, A, false, true)));
}

#[test]
fn unsimplified_counts_for_one_and_two_letters() {
    let g = build(Variant::G1, 1, false).unwrap();
    let s = stats(&g);
    assert_eq!((s.nonterminals, s.productions), (33, 2097));
    let g = build(Variant::G1, 2, false).unwrap();
    let s = stats(&g);
    assert_eq!((s.nonterminals, s.productions), (257, 103810));
}

#[test]
fn four_letters_unsimplified_is_refused() {
    assert!(matches!(build(Variant::G1, 4, false), Err(BuildError::TooLarge { .. })));
}

#[test]
fn simplified_first_variant_counts() {
    let expected = [(6, 15), (44, 1116), (282, 46865)];
    for (k, want) in (1..=3).zip(expected) {
        let s = stats(&build(Variant::G1, k, true).unwrap());
        assert_eq!((s.nonterminals, s.productions), want, "k = {k}");
    }
}

#[test]
fn one_letter_useful_keys_by_hand() {
    let keys = lemma_useful_keys(1);
    let expected = vec![
        Key::new(A, 0, A, false, true),
        Key::new(A, 0, A, true, true),
        Key::new(A, A, A, false, false),
        Key::new(A, A, A, true, false),
        Key::new(A, A, A, true, true),
    ];
    let mut sorted = expected.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn closed_form_matches_productivity_fixpoint() {
    for k in 1..=3 {
        let fix = fixpoint_productive(Variant::G1, k, false, CountHead::ChildAlpha);
        assert_eq!(fix, lemma_useful_keys(k), "k = {k}");
        let printed = fixpoint_productive(Variant::G1, k, true, CountHead::Printed);
        assert_eq!(printed, lemma_useful_keys(k), "printed count head, k = {k}");
    }
}

#[test]
fn count_with_body_alpha_reaches_keys_outside_the_closed_form() {
    let extra = fixpoint_productive(Variant::G1, 1, true, CountHead::ChildAlpha);
    let key = Key::new(A, A, A, false, true);
    assert!(extra.contains(&key));
    assert!(!lemma_useful_keys(1).contains(&key));
    assert_eq!(key_of("a[1,2]", Variant::G1), key);
}

#[test]
fn simplified_is_smaller() {
    for k in 1..=2 {
        for v in [Variant::G1, Variant::G2] {
            let full = stats(&build(v, k, false).unwrap());
            let small = stats(&build(v, k, true).unwrap());
            assert!(small.nonterminals <= full.nonterminals);
            assert!(small.productions <= full.productions);
        }
    }
}

#[test]
fn counter_words() {
    let words = counter_subgrammar_expand(5);
    assert_eq!(words[0].word, "nnm");
    assert_eq!(words[0].bounds(), Some((1, 2)));
    let w = CounterWord::for_bounds(2, 3).unwrap();
    assert_eq!(w.word, "nnnmm");
    assert_eq!(w.derivation, vec!["C -> nAm", "A -> nAm", "A -> B", "B -> n"]);
    for w in counter_subgrammar_expand(12) {
        let (lo, hi) = decode_counter(&w.word).unwrap();
        assert!(hi > lo && lo >= 1);
    }
    assert_eq!(decode_counter("nm"), None);
    assert_eq!(decode_counter("nmn"), None);
}

#[test]
fn derivable_examples() {
    for v in [Variant::G1, Variant::G2] {
        assert_eq!(derivable(&p("a"), v), Ok(true));
        assert_eq!(derivable(&p("(a?&b)a"), v), Ok(false));
        assert_eq!(derivable(&p("(ab)&(cd+e)"), v), Ok(true));
        assert!(matches!(derivable(&p("a[2,2]"), v), Err(FragmentError::Counter { .. })));
        assert!(matches!(derivable(&p("a[0,3]"), v), Err(FragmentError::Counter { .. })));
        assert!(matches!(derivable(&p("a[2,inf]"), v), Err(FragmentError::Counter { .. })));
        assert!(matches!(derivable(&p("a+eps"), v), Err(FragmentError::InnerConstant(_))));
    }
}

fn in_fragment(e: &idre::ExtExpr) -> bool {
    derivable(e, Variant::G1).is_ok()
}

#[test]
fn derivability_matches_the_checker_on_the_fragment() {
    let mut corpus = Corpus::new(21, 3, 12);
    let mut seen = 0;
    for e in corpus.take(3000) {
        if !in_fragment(&e) {
            continue;
        }
        seen += 1;
        let det = determ_w(&e).deterministic;
        assert_eq!(derivable(&e, Variant::G1), Ok(det), "{}", idre::print(&e));
        assert_eq!(derivable(&e, Variant::G2), Ok(det), "{}", idre::print(&e));
    }
    assert!(seen > 300);
}

#[test]
fn combine_heads_equal_attributes_of_the_combined_expression() {
    let mut corpus = Corpus::new(33, 3, 7);
    let pool: Vec<_> = corpus.take(200).into_iter().filter(|e| in_fragment(e) && !matches!(e, Expr::Epsilon)).collect();
    for v in [Variant::G1, Variant::G2] {
        for (i, l) in pool.iter().enumerate().take(60) {
            for r in pool.iter().skip(i).take(20) {
                for (class, e) in [
                    (Class::Union, Expr::union(l.clone(), r.clone())),
                    (Class::Concat, Expr::concat(l.clone(), r.clone())),
                    (Class::Inter, Expr::shuffle(l.clone(), r.clone())),
                ] {
                    let t = AttributedTree::new(&e);
                    let head = expr_key(t.root(), v);
                    let kl = expr_key(&t.nodes[t.nodes[0].children[0]].attrs, v);
                    let kr = expr_key(&t.nodes[t.nodes[0].children[1]].attrs, v);
                    let heads = combine(class, kl, Some(kr), v);
                    if determ_w(&e).deterministic {
                        assert!(heads.contains(&head), "{class:?} {}: {heads:?} vs {head}", idre::print(&e));
                    } else if determ_w(l).deterministic && determ_w(r).deterministic {
                        assert!(!heads.contains(&head), "{class:?} {}", idre::print(&e));
                    }
                }
            }
        }
        for l in &pool {
            for (class, e) in [
                (Class::Opt, Expr::opt(l.clone())),
                (Class::Star, Expr::star(l.clone())),
                (Class::Count, Expr::counter(l.clone(), 1, idre::Upper::Fin(3))),
            ] {
                let t = AttributedTree::new(&e);
                let head = expr_key(t.root(), v);
                let kb = expr_key(&t.nodes[1].attrs, v);
                let heads = combine(class, kb, None, v);
                if determ_w(&e).deterministic {
                    assert!(heads.contains(&head), "{}", idre::print(&e));
                } else if determ_w(l).deterministic && v == Variant::G1 {
                    assert!(!heads.contains(&head), "{}", idre::print(&e));
                }
            }
        }
    }
}

#[test]
fn export_is_stable_and_lists_every_production() {
    let g = build(Variant::G1, 1, true).unwrap();
    let mut a = Vec::new();
    export(&g, &mut a).unwrap();
    let mut b = Vec::new();
    export(&build(Variant::G1, 1, true).unwrap(), &mut b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("grammar g1 sigma=1 simplified=true\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("N ")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("P ")).count(), g.productions.len() + 2);
    assert!(text.contains("P base 0 a") || text.lines().any(|l| l.starts_with("P base ") && l.ends_with(" a")));
    assert!(text.contains("C -> n A m"));
    let printed = build_with(BuildOptions { count_head: CountHead::Printed, ..BuildOptions::new(Variant::G1, 1, true) }).unwrap();
    assert_eq!(stats(&printed), stats(&g));
}

/// Keys realised by the nodes of deterministic fragment expressions built
/// from letters, the binary operators, `?` and `*`.
fn realised_keys(sigma: usize, variant: Variant, n: usize, seed: u64) -> std::collections::BTreeSet<Key> {
    let mut corpus = Corpus::new(seed, sigma, 14);
    let mut keys = std::collections::BTreeSet::new();
    for e in corpus.take(n) {
        let counted = e.nodes().iter().any(|(_, n)| matches!(n, Expr::Counter(_, lo, _) if *lo > 0));
        if counted || matches!(e, Expr::Epsilon) || !in_fragment(&e) || !determ_w(&e).deterministic {
            continue;
        }
        let t = AttributedTree::new(&e);
        keys.extend(t.nodes.iter().map(|node| expr_key(&node.attrs, variant)));
    }
    keys
}

#[test]
fn simplified_nonterminals_are_exactly_the_realised_keys() {
    for (sigma, n) in [(1, 20_000), (2, 200_000)] {
        for v in [Variant::G1, Variant::G2] {
            let fix: std::collections::BTreeSet<Key> =
                fixpoint_productive(v, sigma, false, CountHead::ChildAlpha).into_iter().collect();
            let seen = realised_keys(sigma, v, n, 77);
            assert_eq!(seen, fix, "{v} sigma {sigma}");
        }
    }
}
