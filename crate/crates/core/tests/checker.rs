mod common;

use common::{p, Corpus};
use idre::checker::{determ_marked, determ_unmarked, determ_w};
use idre::oracle::{determinism_exact, determinism_oracle, Determinism, OracleBounds};
use idre::Path;

fn all_three(text: &str) -> [bool; 3] {
    let e = p(text);
    [determ_w(&e).deterministic, determ_unmarked(&e).deterministic, determ_marked(&e).deterministic]
}

#[test]
fn example_nondeterministic_under_every_checker() {
    assert_eq!(all_three("(a?&b)a"), [false; 3]);
    let v = determ_unmarked(&p("(a?&b)a"));
    assert_eq!(v.locus, Some(Path::root()));
    assert_eq!(v.violated_clause, Some("concat/followlast-first"));
}

#[test]
fn atoms_and_eps_are_deterministic() {
    assert_eq!(all_three("a"), [true; 3]);
    assert_eq!(all_three("b"), [true; 3]);
    assert_eq!(all_three("eps"), [true; 3]);
}

#[test]
fn shuffle_of_disjoint_parts() {
    assert_eq!(all_three("(ab)&(cd+e)"), [true; 3]);
    assert_eq!(all_three("(ab)&(ad+b)"), [false; 3]);
}

#[test]
fn flexible_counter_is_deterministic() {
    assert_eq!(all_three("(a[1,2]+b)[2,2]"), [true; 3]);
    assert_eq!(all_three("(a[2,3]+b)[2,2]"), [true; 3]);
}

#[test]
fn localisation_stops_at_the_inner_concat() {
    let e = p("((a.a?&b).(c+d)?)*");
    let v = determ_unmarked(&e);
    assert!(!v.deterministic);
    let locus = v.locus.clone().unwrap();
    assert_eq!(locus.to_string(), "/0/0/0");
    assert_eq!(idre::print(e.at(&locus).unwrap()), "aa?");
    assert_eq!(v.violated_clause, Some("concat/ct-guard"));
    assert!(v.visited_nodes.len() <= 4, "{:?}", v.visited_nodes);

    for other in [determ_w(&e), determ_marked(&e)] {
        assert!(!other.deterministic);
        let root = other.locus.unwrap();
        assert!(root.is_root());
        assert!(locus.is_strict_descendant_of(&root));
    }
}

#[test]
fn corollary_for_iterated_counters() {
    for text in ["(aa?)[2,3]", "(ab)*", "(a?b?)*", "(a+b)[1,2]", "(a&b?)[2,3]"] {
        let e = p(text);
        let idre::Expr::Counter(body, _, _) = &e else { unreachable!() };
        let expected = determ_w(body).deterministic && idre::attrs::w_of(&**body);
        assert_eq!(determ_w(&e).deterministic, expected, "{text}");
    }
}

#[test]
fn entered_nodes_are_linear() {
    let mut corpus = Corpus::new(11, 3, 12);
    for e in corpus.take(500) {
        let v = determ_unmarked(&e);
        assert!(v.entered <= e.node_count());
        if v.deterministic {
            assert_eq!(v.entered, e.node_count());
        }
    }
}

#[test]
fn checkers_agree_with_each_other_and_the_oracles() {
    let mut corpus = Corpus::new(5, 3, 12);
    for e in corpus.take(1500) {
        let w = determ_w(&e);
        let u = determ_unmarked(&e);
        let m = determ_marked(&e);
        let text = idre::print(&e);
        assert_eq!(w.deterministic, u.deterministic, "w/unmarked on {text}");
        assert_eq!(w.deterministic, m.deterministic, "w/marked on {text}");
        assert_eq!(w.locus.is_some(), !w.deterministic);
        let exact = determinism_exact(&e).unwrap();
        assert_eq!(exact.known(), Some(w.deterministic), "exact on {text}");
        let bounds = OracleBounds { max_len: 10, max_words: 200_000 };
        match determinism_oracle(&e, bounds) {
            Determinism::Inconclusive => {}
            d => assert_eq!(d.known(), Some(w.deterministic), "oracle on {text}"),
        }
    }
}
