use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::nfa::{Nfa, DEFAULT_STATE_CAP};
use super::{OracleBounds, OracleError};
use crate::expr::{mark, ExtExpr, Expr, Marked, Symbol};
use crate::symset::SymSet;

/// Two distinct marked symbols with one letter, both able to follow `prefix`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub prefix: Vec<Marked>,
    pub x: Marked,
    pub y: Marked,
}

impl Witness {
    pub fn prefix_string(&self) -> String {
        super::word_to_string(&self.prefix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Determinism {
    Deterministic,
    Violation(Witness),
    Inconclusive,
}

impl Determinism {
    pub fn known(&self) -> Option<bool> {
        match self {
            Determinism::Deterministic => Some(true),
            Determinism::Violation(_) => Some(false),
            Determinism::Inconclusive => None,
        }
    }
}

/// Searches the prefix tree of the bounded marked language for a prefix
/// followed by two distinct marked symbols with the same letter, shortest
/// prefix first. Without a witness the answer is only conclusive when the
/// bounded language is complete.
pub fn determinism_oracle(e: &ExtExpr, bounds: OracleBounds) -> Determinism {
    let marked = mark(e);
    let lang = match super::enumerate::enumerate_capped(&marked, bounds.max_len, bounds.max_words) {
        Ok(l) => l,
        Err(_) => return Determinism::Inconclusive,
    };
    let mut next: BTreeMap<(usize, Vec<Marked>), BTreeSet<Marked>> = BTreeMap::new();
    for w in &lang.words {
        for i in 0..w.len() {
            next.entry((i, w[..i].to_vec())).or_default().insert(w[i]);
        }
    }
    for ((_, prefix), syms) in &next {
        if let Some((x, y)) = clash(syms) {
            return Determinism::Violation(Witness { prefix: prefix.clone(), x, y });
        }
    }
    if lang.complete {
        Determinism::Deterministic
    } else {
        Determinism::Inconclusive
    }
}

fn clash(syms: &BTreeSet<Marked>) -> Option<(Marked, Marked)> {
    let v: Vec<&Marked> = syms.iter().collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i].letter == v[j].letter {
                return Some((*v[i], *v[j]));
            }
        }
    }
    None
}

/// Exact decision through the subset construction of the position automaton.
pub fn determinism_exact(e: &ExtExpr) -> Result<Determinism, OracleError> {
    let marked = mark(e);
    let nfa = Nfa::build(&marked, DEFAULT_STATE_CAP)?;
    let found = nfa.explore(
        |p| nfa.positions[p as usize],
        DEFAULT_STATE_CAP,
        |set, word| {
            let syms: BTreeSet<Marked> = nfa.moves(set).map(|(p, _)| nfa.positions[p as usize]).collect();
            clash(&syms).map(|(x, y)| Witness { prefix: word.to_vec(), x, y })
        },
    )?;
    Ok(match found {
        Some(w) => Determinism::Violation(w),
        None => Determinism::Deterministic,
    })
}

/// First symbols of the bounded language, with its completeness flag.
pub fn first_oracle<S: Symbol>(e: &Expr<S>, bounds: OracleBounds) -> Result<(SymSet<S>, bool), OracleError> {
    let lang = super::enumerate::enumerate_capped(e, bounds.max_len, bounds.max_words)?;
    Ok((lang.words.iter().filter_map(|w| w.first().copied()).collect(), lang.complete))
}

/// Symbols that continue a nonempty word of the language inside a longer
/// word of the language, over the bounded language.
pub fn followlast_oracle<S: Symbol>(e: &Expr<S>, bounds: OracleBounds) -> Result<(SymSet<S>, bool), OracleError> {
    let lang = super::enumerate::enumerate_capped(e, bounds.max_len, bounds.max_words)?;
    let mut out = BTreeSet::new();
    for w in &lang.words {
        for i in 1..w.len() {
            if lang.words.contains(&w[..i]) {
                out.insert(w[i]);
            }
        }
    }
    Ok((out, lang.complete))
}

pub fn first_exact<S: Symbol>(e: &Expr<S>) -> Result<SymSet<S>, OracleError> {
    let nfa = Nfa::build(e, DEFAULT_STATE_CAP)?;
    let init = nfa.initial();
    Ok(nfa.moves(&init).map(|(p, _)| nfa.positions[p as usize]).collect())
}

pub fn followlast_exact<S: Symbol>(e: &Expr<S>) -> Result<SymSet<S>, OracleError> {
    let nfa = Nfa::build(e, DEFAULT_STATE_CAP)?;
    let mut out = BTreeSet::new();
    nfa.explore(
        |p| nfa.positions[p as usize],
        DEFAULT_STATE_CAP,
        |set, word| {
            if !word.is_empty() && nfa.is_accepting(set) {
                out.extend(nfa.moves(set).map(|(p, _)| nfa.positions[p as usize]));
            }
            None::<()>
        },
    )?;
    Ok(out)
}
