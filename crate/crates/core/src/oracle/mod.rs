//! Language-level reference semantics. Everything here works from the
//! definitions (words, interleavings, iterated concatenation) rather than
//! from the compositional attribute rules, so it can be used to check them.
//!
//! Two families of routines live here. The bounded ones enumerate words up to
//! a length limit and report whether the answer is conclusive. The exact ones
//! go through a Thompson-style automaton over symbol positions and are limited
//! only by a state budget.

mod continuing;
mod determinism;
mod enumerate;
mod flexible;
mod membership;
pub mod nfa;
mod shuffle;

use std::fmt;

use serde::Serialize;

use crate::expr::{Atom, Expr};

pub use continuing::continuing_oracle;
pub use determinism::{determinism_exact, determinism_oracle, first_exact, first_oracle, followlast_exact, followlast_oracle, Determinism, Witness};
pub use enumerate::{enumerate, max_word_len, BoundedLanguage};
pub use flexible::{flexible_exact, flexible_oracle, FlexReading};
pub use membership::membership;
pub use shuffle::shuffle_words;

pub type Word<S> = Vec<S>;

pub fn word_to_string<S: Atom>(w: &[S]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().map(|s| s.to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("bounded language exceeds {cap} words")]
    TooManyWords { cap: usize },
    #[error("automaton exceeds {cap} states")]
    TooManyStates { cap: usize },
    #[error("no subexpression at {0}")]
    BadPath(String),
    #[error("{0}")]
    Precondition(&'static str),
}

/// Three-valued answer of a semi-decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    True,
    False,
    Inconclusive,
}

impl Answer {
    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::True
        } else {
            Answer::False
        }
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Answer::True => Some(true),
            Answer::False => Some(false),
            Answer::Inconclusive => None,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::True => "true",
            Answer::False => "false",
            Answer::Inconclusive => "inconclusive",
        })
    }
}

/// Limits for the bounded routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_len: usize,
    pub max_words: usize,
}

pub const DEFAULT_WORD_CAP: usize = 2_000_000;

impl OracleBounds {
    pub fn new(max_len: usize) -> OracleBounds {
        OracleBounds { max_len, max_words: DEFAULT_WORD_CAP }
    }

    /// `2 · occurrences · max(finite bound, 1) + 2`, raised to the structural
    /// maximum word length when the expression has no `inf` bound so that
    /// nested counters still enumerate completely.
    pub fn for_expr<S: Atom>(e: &Expr<S>) -> OracleBounds {
        let occ = e.symbols().len().max(1);
        let base = 2 * occ * e.max_finite_bound() as usize + 2;
        let max_len = match max_word_len(e) {
            Some(n) => base.max(n),
            None => base,
        };
        OracleBounds::new(max_len)
    }
}
