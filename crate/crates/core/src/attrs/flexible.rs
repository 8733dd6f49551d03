use crate::expr::{Expr, Marked, MarkedExpr, Symbol, Upper};
use crate::oracle::{flexible_exact, flexible_oracle, Answer, FlexReading, OracleBounds, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlexibleError {
    #[error("not a counter")]
    NotCounter,
    #[error("flexibility undecided: {0}")]
    Undecided(OracleError),
}

/// Is the counter `e = G[m,n]` flexible on its own?
///
/// Occurrences are given distinct subscripts first, so a word only counts
/// when the same positions match it both as one pass of the counter and as
/// fewer than `n` iterations of the body.
///
/// Shortcuts: `n ≤ 1` never is; a body without symbols never is; `m < n`
/// always is; `m = n` with a nullable body always is. Everything else goes
/// to the automaton route, then to the bounded search.
pub fn flexible_of<S: Symbol>(e: &Expr<S>) -> Result<bool, FlexibleError> {
    let Expr::Counter(body, lo, hi) = e else {
        return Err(FlexibleError::NotCounter);
    };
    if !hi.at_least(2) || body.symbols().is_empty() {
        return Ok(false);
    }
    if Upper::Fin(*lo) < *hi || super::nullable(body) {
        return Ok(true);
    }
    let positions = positions(e);
    match flexible_exact(&positions) {
        Ok(b) => Ok(b),
        Err(_) => match flexible_oracle(&positions, &crate::expr::Path::root(), OracleBounds::for_expr(&positions), FlexReading::Intrinsic) {
            Ok(Answer::True) => Ok(true),
            Ok(Answer::False) => Ok(false),
            Ok(Answer::Inconclusive) => Err(FlexibleError::Undecided(OracleError::Precondition("bounded search inconclusive"))),
            Err(err) => Err(FlexibleError::Undecided(err)),
        },
    }
}

/// One subscript per occurrence, whatever the input symbols were.
fn positions<S: Symbol>(e: &Expr<S>) -> MarkedExpr {
    let mut next = 0;
    e.map_symbols(&mut |s: S| {
        next += 1;
        Marked { letter: s.letter(), sub: next }
    })
}
