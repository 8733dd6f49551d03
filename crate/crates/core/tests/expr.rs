mod common;

use std::collections::BTreeSet;

use common::{arb_expr, arb_simple, p};
use idre::expr::{mark, parse, print, simplify, size, unmark, Expr, ParseErrorKind, Upper};
use idre::oracle::enumerate;
use proptest::prelude::*;

#[test]
fn precedence_and_sugar() {
    assert_eq!(p("a+bc&d"), Expr::shuffle(Expr::union(p("a"), Expr::concat(p("b"), p("c"))), p("d")));
    assert_eq!(p("a&b+c"), Expr::shuffle(p("a"), Expr::union(p("b"), p("c"))));
    assert_eq!(p("a?"), Expr::counter(p("a"), 0, Upper::Fin(1)));
    assert_eq!(p("a*"), Expr::counter(p("a"), 0, Upper::Inf));
    assert_eq!(p("a[2,inf]"), Expr::counter(p("a"), 2, Upper::Inf));
    assert_eq!(p("(a.b).c"), p("(ab)c"));
    assert_eq!(p(" a b "), p("ab"));
}

#[test]
fn printing() {
    assert_eq!(print(&p("(a.b)&(c.d+e)")), "(ab)&(cd+e)");
    assert_eq!(print(&p("((a.a?&b).(c+d)?)*")), "(((aa?)&b)(c+d)?)*");
    assert_eq!(print(&p("a[1,2][2,2]")), "a[1,2][2,2]");
    assert_eq!(print(&p("eps+empty")), "eps+empty");
}

#[test]
fn parse_errors() {
    assert!(matches!(parse("a[3,2]").unwrap_err().kind, ParseErrorKind::Bounds(_)));
    assert!(matches!(parse("(a").unwrap_err().kind, ParseErrorKind::Expected(_) | ParseErrorKind::UnexpectedEnd));
    assert!(matches!(parse("a$").unwrap_err().kind, ParseErrorKind::UnexpectedChar('$')));
    assert!(parse("").is_err());
    assert!(parse("A").is_err());
}

#[test]
fn sizes() {
    assert_eq!(size(&p("a")), 1);
    assert_eq!(size(&p("(ab)&(cd+e)")), 9);
    assert_eq!(size(&p("a?")), 4);
    assert_eq!(size(&p("a*")), 4);
    assert_eq!(size(&p("a[2,5]")), 1 + 1 + 2 + 3);
}

#[test]
fn simplify_rules() {
    assert_eq!(simplify(&p("a+empty")), p("a"));
    assert_eq!(simplify(&p("a empty b")), Expr::Empty);
    assert_eq!(simplify(&p("a&eps")), p("a"));
    assert_eq!(simplify(&p("eps[2,3]")), Expr::Epsilon);
    assert_eq!(simplify(&p("empty*")), Expr::Epsilon);
    assert_eq!(simplify(&p("empty[1,2]")), Expr::Empty);
    assert_eq!(simplify(&p("a+eps")), p("a+eps"));
}

#[test]
fn marking_numbers_per_letter() {
    let m = mark(&p("(a?&b)a"));
    assert_eq!(print(&m), "(a₁?&b₁)a₂");
}

fn language(e: &idre::ExtExpr, n: usize) -> BTreeSet<Vec<idre::Letter>> {
    enumerate(e, n).unwrap().words
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn print_parse_round_trip(e in arb_expr(3)) {
        prop_assert_eq!(parse(&print(&e)).unwrap(), e);
    }

    #[test]
    fn simplify_is_idempotent_and_removes_empty(e in arb_expr(3)) {
        let s = simplify(&e);
        prop_assert_eq!(simplify(&s), s.clone());
        prop_assert!(matches!(s, Expr::Empty) || !s.contains_empty());
    }

    #[test]
    fn simplify_preserves_language(e in arb_expr(2)) {
        prop_assert_eq!(language(&e, 5), language(&simplify(&e), 5));
    }

    #[test]
    fn marks_are_distinct_and_unmark_inverts(e in arb_simple(3)) {
        let m = mark(&e);
        let syms = m.symbols();
        let distinct: BTreeSet<_> = syms.iter().collect();
        prop_assert_eq!(distinct.len(), syms.len());
        prop_assert_eq!(unmark(&m), e);
    }
}
