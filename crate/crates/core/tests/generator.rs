mod common;

use idre::attrs::AttributedTree;
use idre::checker::{determ_marked, determ_unmarked, determ_w};
use idre::expr::{size, Expr};
use idre::generator::{generate, generate_batch, item_seed, lower_bound, GenConfig, GenError};
use idre::grammar::{derivable, expr_key, Class, Key, Variant};

fn check_output(cfg: &GenConfig, r: &idre::generator::GenResult) {
    let e = &r.expr;
    assert!(size(e) <= cfg.max_size, "{e}");
    assert!(e.symbols().iter().all(|l| l.index() < cfg.alphabet_size), "{e}");
    assert!(determ_w(e).deterministic && determ_unmarked(e).deterministic && determ_marked(e).deterministic, "{e}");
    assert_eq!(derivable(e, Variant::G1), Ok(true), "{e}");
    match r.key {
        Some(k) => assert_eq!(expr_key(AttributedTree::new(e).root(), Variant::G1), k),
        None => assert_eq!(*e, Expr::Epsilon),
    }
}

#[test]
fn outputs_satisfy_every_postcondition() {
    for sigma in 1..=4 {
        let cfg = GenConfig::new(sigma, 30, 7);
        for r in generate_batch(&cfg, 100) {
            check_output(&cfg, &r.unwrap());
        }
    }
}

#[test]
fn same_seed_same_output() {
    let cfg = GenConfig::new(3, 30, 42);
    let a = generate(&cfg).unwrap();
    let b = generate(&cfg).unwrap();
    assert_eq!(a.expr, b.expr);
    assert_eq!(a.trace, b.trace);
    let xs: Vec<_> = generate_batch(&cfg, 10).into_iter().map(|r| r.unwrap().expr).collect();
    let ys: Vec<_> = generate_batch(&cfg, 10).into_iter().map(|r| r.unwrap().expr).collect();
    assert_eq!(xs, ys);
    assert_ne!(item_seed(42, 0), item_seed(42, 1));
}

#[test]
fn trace_starts_at_the_key_and_ends_in_letters() {
    let cfg = GenConfig::new(2, 30, 3);
    for r in generate_batch(&cfg, 50) {
        let r = r.unwrap();
        let Some(k) = r.key else { continue };
        assert_eq!(r.trace[0].0, k);
        let leaves = r.trace.iter().filter(|(_, c)| *c == Class::Base).count();
        assert_eq!(leaves, r.expr.symbols().len());
    }
}

#[test]
fn one_letter_budget_of_one() {
    let cfg = GenConfig::new(1, 1, 0);
    for r in generate_batch(&cfg, 40) {
        let e = r.unwrap().expr;
        assert!(e == Expr::Epsilon || e == common::p("a"), "{e}");
    }
}

#[test]
fn tight_budget_may_fail_but_never_overflows() {
    let cfg = GenConfig { restart_cap: 1, ..GenConfig::new(3, 1, 5) };
    for r in generate_batch(&cfg, 50) {
        match r {
            Ok(r) => assert!(size(&r.expr) <= 1),
            Err(e) => assert!(matches!(e, GenError::Exhausted(1))),
        }
    }
    assert_eq!(lower_bound(&Key::new(7, 0, 7, false, true)), 5);
}

#[test]
fn bad_configurations() {
    assert!(matches!(generate(&GenConfig::new(0, 30, 0)), Err(GenError::Config(_))));
    assert!(matches!(generate(&GenConfig::new(27, 30, 0)), Err(GenError::Config(_))));
    assert!(matches!(generate(&GenConfig::new(2, 0, 0)), Err(GenError::Config(_))));
    let mut cfg = GenConfig::new(2, 30, 0);
    cfg.class_weights[3] = 0.0;
    assert!(matches!(generate(&cfg), Err(GenError::Config(_))));
}

#[test]
fn counters_stay_under_the_cap() {
    let cfg = GenConfig { counter_value_cap: 3, ..GenConfig::new(2, 30, 9) };
    for r in generate_batch(&cfg, 100) {
        let e = r.unwrap().expr;
        assert!(e.max_finite_bound() <= 3, "{e}");
    }
}

#[test]
fn larger_alphabets_without_materialising() {
    let cfg = GenConfig::new(7, 30, 1);
    for r in generate_batch(&cfg, 3) {
        check_output(&cfg, &r.unwrap());
    }
}
