//! Small helpers for symbol sets and letter bitmasks.

use std::collections::BTreeSet;

use crate::expr::{Letter, Symbol};

pub type SymSet<S> = BTreeSet<S>;

/// Bitmask of the letters underlying a set of symbols.
pub fn letter_mask<S: Symbol>(set: &SymSet<S>) -> u32 {
    set.iter().fold(0, |m, s| m | s.letter().bit())
}

pub fn letters_of_mask(mask: u32) -> Vec<Letter> {
    (0..32).filter(|i| mask >> i & 1 == 1).filter_map(|i| Letter::new(i as usize)).collect()
}

/// `"{a,b}"`, or `"∅"` for the empty mask.
pub fn mask_to_string(mask: u32) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    let inner: Vec<String> = letters_of_mask(mask).iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn set_to_string<S: Symbol>(set: &SymSet<S>) -> String {
    if set.is_empty() {
        return "∅".to_string();
    }
    let inner: Vec<String> = set.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn disjoint<S: Symbol>(a: &SymSet<S>, b: &SymSet<S>) -> bool {
    a.is_disjoint(b)
}

/// Intersection after forgetting subscripts.
pub fn letters_disjoint<S: Symbol>(a: &SymSet<S>, b: &SymSet<S>) -> bool {
    letter_mask(a) & letter_mask(b) == 0
}
