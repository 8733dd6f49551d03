//! Compositional attributes of expressions: `sym`, λ (nullable), `first`,
//! `followlast`, 𝒲, the flexible flag of counters and the top-down
//! continuing flag `ct`.
//!
//! The free functions recompute from scratch on every call. [`AttributedTree`]
//! evaluates everything once: a bottom-up pass for the intrinsic attributes,
//! then a top-down pass for `ct`.

mod flexible;
mod tree;

use std::collections::BTreeSet;

use crate::expr::{Expr, Symbol};
use crate::symset::SymSet;

pub use flexible::{flexible_of, FlexibleError};
pub use tree::{mark_continuing, AttrNode, AttrRecord, AttributedTree};

pub fn sym_of<S: Symbol>(e: &Expr<S>) -> SymSet<S> {
    e.symbols().into_iter().collect()
}

pub fn nullable<S>(e: &Expr<S>) -> bool {
    match e {
        Expr::Epsilon => true,
        Expr::Empty | Expr::Sym(_) => false,
        Expr::Union(l, r) => nullable(l) || nullable(r),
        Expr::Concat(l, r) | Expr::Shuffle(l, r) => nullable(l) && nullable(r),
        Expr::Counter(b, lo, _) => *lo == 0 || nullable(b),
    }
}

pub fn first_of<S: Symbol>(e: &Expr<S>) -> SymSet<S> {
    match e {
        Expr::Epsilon | Expr::Empty => BTreeSet::new(),
        Expr::Sym(s) => BTreeSet::from([*s]),
        Expr::Union(l, r) | Expr::Shuffle(l, r) => &first_of(l) | &first_of(r),
        Expr::Concat(l, r) if nullable(l) => &first_of(l) | &first_of(r),
        Expr::Concat(l, _) => first_of(l),
        Expr::Counter(b, _, _) => first_of(b),
    }
}

/// Followlast by the marked rules, with flexible counters decided by
/// [`flexible_of`]. A counter whose flexibility cannot be decided within the
/// resource limits is treated as flexible.
pub fn followlast_of<S: Symbol>(e: &Expr<S>) -> SymSet<S> {
    match e {
        Expr::Epsilon | Expr::Empty | Expr::Sym(_) => BTreeSet::new(),
        Expr::Union(l, r) => &followlast_of(l) | &followlast_of(r),
        Expr::Concat(l, r) => followlast_concat(
            &followlast_of(l),
            &first_of(r),
            &followlast_of(r),
            nullable(r),
        ),
        Expr::Shuffle(l, r) => followlast_shuffle(
            (&first_of(l), &followlast_of(l), nullable(l)),
            (&first_of(r), &followlast_of(r), nullable(r)),
        ),
        Expr::Counter(b, _, _) => {
            let fl = followlast_of(b);
            if flexible_of(e).unwrap_or(true) {
                &fl | &first_of(b)
            } else {
                fl
            }
        }
    }
}

pub(crate) fn followlast_concat<S: Symbol>(fl1: &SymSet<S>, f2: &SymSet<S>, fl2: &SymSet<S>, n2: bool) -> SymSet<S> {
    if n2 {
        let mut out = fl1 | f2;
        out.extend(fl2.iter().copied());
        out
    } else {
        fl2.clone()
    }
}

pub(crate) fn followlast_shuffle<S: Symbol>(
    (f1, fl1, n1): (&SymSet<S>, &SymSet<S>, bool),
    (f2, fl2, n2): (&SymSet<S>, &SymSet<S>, bool),
) -> SymSet<S> {
    let mut out = fl1 | fl2;
    if n2 {
        out.extend(f2.iter().copied());
    }
    if n1 {
        out.extend(f1.iter().copied());
    }
    out
}

/// The 𝒲 flag.
pub fn w_of<S: Symbol>(e: &Expr<S>) -> bool {
    match e {
        Expr::Epsilon | Expr::Empty | Expr::Sym(_) => true,
        Expr::Union(l, r) => w_union(
            (w_of(l), &first_of(l), &followlast_of(l)),
            (w_of(r), &first_of(r), &followlast_of(r)),
        ),
        Expr::Concat(l, r) => w_concat(
            (w_of(l), &first_of(l), &followlast_of(l), nullable(l)),
            (w_of(r), &first_of(r), &followlast_of(r), nullable(r)),
        ),
        Expr::Shuffle(l, r) => w_of(l) && w_of(r),
        Expr::Counter(b, _, _) => w_of(b),
    }
}

pub(crate) fn w_union<S: Symbol>((w1, f1, fl1): (bool, &SymSet<S>, &SymSet<S>), (w2, f2, fl2): (bool, &SymSet<S>, &SymSet<S>)) -> bool {
    w1 && w2 && fl1.is_disjoint(f2) && fl2.is_disjoint(f1)
}

pub(crate) fn w_concat<S: Symbol>(
    (w1, f1, _fl1, n1): (bool, &SymSet<S>, &SymSet<S>, bool),
    (w2, f2, fl2, n2): (bool, &SymSet<S>, &SymSet<S>, bool),
) -> bool {
    fl2.is_disjoint(f1)
        && match (n1, n2) {
            (false, false) => true,
            (true, false) => w2,
            (true, true) => w1 && w2,
            (false, true) => w1 && f1.is_disjoint(f2),
        }
}
