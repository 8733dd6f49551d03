#![allow(dead_code)]

use idre::expr::{size, simplify, Expr, ExtExpr, Letter, Upper};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(text: &str) -> ExtExpr {
    idre::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn letter(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

/// Random simplified expressions over the first `sigma` letters with size at
/// most `max_size` and finite counter bounds at most 3.
pub struct Corpus {
    rng: ChaCha8Rng,
    sigma: usize,
    max_size: u64,
}

impl Corpus {
    pub fn new(seed: u64, sigma: usize, max_size: u64) -> Corpus {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed), sigma, max_size }
    }

    pub fn next_expr(&mut self) -> ExtExpr {
        loop {
            let budget = self.rng.random_range(1..=self.max_size);
            let e = simplify(&self.grow(budget as i64));
            if size(&e) <= self.max_size && !matches!(e, Expr::Empty) {
                return e;
            }
        }
    }

    pub fn take(&mut self, n: usize) -> Vec<ExtExpr> {
        (0..n).map(|_| self.next_expr()).collect()
    }

    fn leaf(&mut self) -> ExtExpr {
        if self.rng.random_ratio(1, 12) {
            Expr::Epsilon
        } else {
            Expr::Sym(Letter::new(self.rng.random_range(0..self.sigma)).unwrap())
        }
    }

    fn grow(&mut self, budget: i64) -> ExtExpr {
        if budget <= 2 {
            return self.leaf();
        }
        match self.rng.random_range(0..10) {
            0..=2 => self.binary(budget, Expr::concat),
            3..=4 => self.binary(budget, Expr::union),
            5..=6 => self.binary(budget, Expr::shuffle),
            _ => {
                let (lo, hi) = match self.rng.random_range(0..4) {
                    0 => (0, Upper::Fin(1)),
                    1 => (0, Upper::Inf),
                    _ => {
                        let hi = self.rng.random_range(1..=3);
                        (self.rng.random_range(0..=hi), Upper::Fin(hi))
                    }
                };
                let cost = idre::expr::counter_cost(lo, hi) as i64;
                let body = self.grow(budget - cost);
                Expr::counter(body, lo, hi)
            }
        }
    }

    fn binary(&mut self, budget: i64, mk: fn(ExtExpr, ExtExpr) -> ExtExpr) -> ExtExpr {
        let rest = budget - 1;
        let left = self.rng.random_range(1..rest.max(2));
        let l = self.grow(left);
        let r = self.grow(rest - left);
        mk(l, r)
    }
}

/// Proptest strategy for small expressions, ε and ∅ included.
pub fn arb_expr(sigma: u8) -> impl Strategy<Value = ExtExpr> {
    let leaf = prop_oneof![
        1 => Just(Expr::Epsilon),
        1 => Just(Expr::Empty),
        6 => (0..sigma).prop_map(|i| Expr::Sym(Letter::new(i as usize).unwrap())),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::union(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::concat(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::shuffle(l, r)),
            (inner, 0u32..3, prop_oneof![(1u32..4).prop_map(Upper::Fin), Just(Upper::Inf)])
                .prop_map(|(b, lo, hi)| {
                    let lo = match hi {
                        Upper::Fin(n) => lo.min(n),
                        Upper::Inf => lo,
                    };
                    Expr::counter(b, lo, hi)
                }),
        ]
    })
}

/// Like [`arb_expr`] but already simplified and free of ∅.
pub fn arb_simple(sigma: u8) -> impl Strategy<Value = ExtExpr> {
    arb_expr(sigma).prop_map(|e| simplify(&e)).prop_filter("empty", |e| !matches!(e, Expr::Empty))
}
