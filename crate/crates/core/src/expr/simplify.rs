use super::{Expr, Atom};

/// Removes ∅ and redundant ε in one bottom-up pass:
///
/// ```text
/// E+∅ = ∅+E = E     E∅ = ∅E = ∅      E&∅ = ∅&E = ∅
/// Eε = εE = E       E&ε = ε&E = E    ε[m,n] = ε
/// ∅[0,n] = ε        ∅[m,n] = ∅ (m ≥ 1)
/// ```
///
/// The result is ∅ itself or contains no ∅. Unions with ε are kept, since
/// dropping the ε would change the language.
pub fn simplify<S: Atom>(e: &Expr<S>) -> Expr<S> {
    match e {
        Expr::Epsilon | Expr::Empty | Expr::Sym(_) => e.clone(),
        Expr::Union(l, r) => match (simplify(l), simplify(r)) {
            (Expr::Empty, x) | (x, Expr::Empty) => x,
            (a, b) => Expr::union(a, b),
        },
        Expr::Concat(l, r) => match (simplify(l), simplify(r)) {
            (Expr::Empty, _) | (_, Expr::Empty) => Expr::Empty,
            (Expr::Epsilon, x) | (x, Expr::Epsilon) => x,
            (a, b) => Expr::concat(a, b),
        },
        Expr::Shuffle(l, r) => match (simplify(l), simplify(r)) {
            (Expr::Empty, _) | (_, Expr::Empty) => Expr::Empty,
            (Expr::Epsilon, x) | (x, Expr::Epsilon) => x,
            (a, b) => Expr::shuffle(a, b),
        },
        Expr::Counter(b, lo, hi) => match simplify(b) {
            Expr::Epsilon => Expr::Epsilon,
            Expr::Empty if *lo == 0 => Expr::Epsilon,
            Expr::Empty => Expr::Empty,
            body => Expr::Counter(Box::new(body), *lo, *hi),
        },
    }
}

/// `?` and `*` are stored as counters from the start, so this is the identity.
pub fn desugar<S: Atom>(e: &Expr<S>) -> Expr<S> {
    e.clone()
}
