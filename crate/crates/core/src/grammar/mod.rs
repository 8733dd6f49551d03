//! The two attribute-keyed context-free grammars of deterministic expressions.
//!
//! A nonterminal `R^{F,L,S,α,x}` stands for the expressions with first set
//! `F`, followlast set `L`, symbol set `S` and nullability `α`. The last
//! component is 𝒲 in the first variant and `ct` in the second. Sets are
//! letter bitmasks.
//!
//! Productions are never guessed: for a production class and operand keys,
//! [`combine`] solves for the heads that the side conditions admit.

mod build;
mod counter;
mod derive;

use std::fmt;

use serde::Serialize;

use crate::symset::mask_to_string;

pub use build::{
    build, build_with, export, fixpoint_productive, key_count, lemma_useful_keys, stats, BuildError, BuildOptions, Grammar,
    Production, Stats, DEFAULT_PRODUCTION_CAP,
};
pub use counter::{counter_subgrammar_expand, decode_counter, CounterWord};
pub use derive::{derivable, expr_key, FragmentError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Last key component is 𝒲.
    G1,
    /// Last key component is `ct`.
    G2,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::G1 => "g1",
            Variant::G2 => "g2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Base,
    Union,
    Concat,
    Inter,
    Opt,
    Star,
    Count,
}

impl Class {
    pub const ALL: [Class; 7] = [Class::Base, Class::Union, Class::Concat, Class::Inter, Class::Opt, Class::Star, Class::Count];

    pub fn is_binary(self) -> bool {
        matches!(self, Class::Union | Class::Concat | Class::Inter)
    }

    pub fn name(self) -> &'static str {
        match self {
            Class::Base => "base",
            Class::Union => "union",
            Class::Concat => "concat",
            Class::Inter => "inter",
            Class::Opt => "opt",
            Class::Star => "star",
            Class::Count => "count",
        }
    }
}

/// Head of a Count production: the nullability of the body (the default), or
/// the constant `α = 1` head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountHead {
    #[default]
    ChildAlpha,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Key {
    pub first: u32,
    pub followlast: u32,
    pub sym: u32,
    pub alpha: bool,
    /// 𝒲 or `ct`, depending on the variant.
    pub flag: bool,
}

impl Key {
    pub fn new(first: u32, followlast: u32, sym: u32, alpha: bool, flag: bool) -> Key {
        Key { first, followlast, sym, alpha, flag }
    }

    /// Dense index among the `4·8^k` keys over `k` letters.
    pub fn index(&self, k: usize) -> usize {
        let base = ((self.first as usize) << (2 * k)) | ((self.followlast as usize) << k) | self.sym as usize;
        base * 4 + (self.alpha as usize) * 2 + self.flag as usize
    }

    pub fn from_index(i: usize, k: usize) -> Key {
        let mask = (1usize << k) - 1;
        let base = i / 4;
        Key {
            first: ((base >> (2 * k)) & mask) as u32,
            followlast: ((base >> k) & mask) as u32,
            sym: (base & mask) as u32,
            alpha: i & 2 != 0,
            flag: i & 1 != 0,
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R[{}, {}, {}, {}, {}]",
            mask_to_string(self.first),
            mask_to_string(self.followlast),
            mask_to_string(self.sym),
            self.alpha as u8,
            self.flag as u8
        )
    }
}

/// Up to two heads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heads {
    keys: [Key; 2],
    len: u8,
}

impl Heads {
    const NONE: Heads = Heads { keys: [Key { first: 0, followlast: 0, sym: 0, alpha: false, flag: false }; 2], len: 0 };

    fn one(k: Key) -> Heads {
        Heads { keys: [k, k], len: 1 }
    }

    fn push(&mut self, k: Key) {
        self.keys[self.len as usize] = k;
        self.len += 1;
    }

    pub fn as_slice(&self) -> &[Key] {
        &self.keys[..self.len as usize]
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, k: &Key) -> bool {
        self.as_slice().contains(k)
    }
}

impl<'a> IntoIterator for &'a Heads {
    type Item = &'a Key;
    type IntoIter = std::slice::Iter<'a, Key>;

    fn into_iter(self) -> Self::IntoIter {
        self.as_slice().iter()
    }
}

fn meet(a: u32, b: u32) -> bool {
    a & b != 0
}

/// Heads admitted by the side conditions of `class` for the given operands.
/// `right` is ignored by unary classes; Base takes no operands and yields
/// nothing here (see [`base_keys`]).
pub fn combine(class: Class, left: Key, right: Option<Key>, variant: Variant) -> Heads {
    combine_with(class, left, right, variant, CountHead::ChildAlpha)
}

pub fn combine_with(class: Class, l: Key, right: Option<Key>, variant: Variant, count_head: CountHead) -> Heads {
    match class {
        Class::Base => Heads::NONE,
        Class::Union | Class::Concat | Class::Inter => {
            let Some(r) = right else { return Heads::NONE };
            match variant {
                Variant::G1 => g1_binary(class, l, r),
                Variant::G2 => g2_binary(class, l, r),
            }
        }
        Class::Opt => Heads::one(Key { alpha: true, ..l }),
        Class::Star | Class::Count => {
            let alpha = class == Class::Star || count_head == CountHead::Printed || l.alpha;
            let head = Key { followlast: l.followlast | l.first, alpha, ..l };
            match variant {
                Variant::G1 if l.flag => Heads::one(Key { flag: true, ..head }),
                Variant::G1 => Heads::NONE,
                Variant::G2 if l.flag => {
                    let mut h = Heads::one(Key { flag: false, ..head });
                    h.push(Key { flag: true, ..head });
                    h
                }
                Variant::G2 => Heads::NONE,
            }
        }
    }
}

fn concat_sets(l: Key, r: Key) -> (u32, u32) {
    let first = if l.alpha { l.first | r.first } else { l.first };
    let followlast = if r.alpha { l.followlast | r.followlast | r.first } else { r.followlast };
    (first, followlast)
}

fn inter_followlast(l: Key, r: Key) -> u32 {
    let mut out = l.followlast | r.followlast;
    if l.alpha {
        out |= l.first;
    }
    if r.alpha {
        out |= r.first;
    }
    out
}

fn g1_binary(class: Class, l: Key, r: Key) -> Heads {
    match class {
        Class::Union => {
            if meet(l.first, r.first) {
                return Heads::NONE;
            }
            let w = l.flag && r.flag && !meet(l.followlast, r.first) && !meet(r.followlast, l.first);
            Heads::one(Key::new(l.first | r.first, l.followlast | r.followlast, l.sym | r.sym, l.alpha || r.alpha, w))
        }
        Class::Concat => {
            if meet(l.followlast, r.first) || (l.alpha && meet(l.first, r.first)) {
                return Heads::NONE;
            }
            let (first, followlast) = concat_sets(l, r);
            let w = !meet(r.followlast, l.first)
                && match (l.alpha, r.alpha) {
                    (false, false) => true,
                    (true, false) => r.flag,
                    (true, true) => l.flag && r.flag,
                    (false, true) => l.flag && !meet(l.first, r.first),
                };
            Heads::one(Key::new(first, followlast, l.sym | r.sym, l.alpha && r.alpha, w))
        }
        Class::Inter => {
            if meet(l.sym, r.sym) {
                return Heads::NONE;
            }
            Heads::one(Key::new(l.first | r.first, inter_followlast(l, r), l.sym | r.sym, l.alpha && r.alpha, l.flag && r.flag))
        }
        _ => Heads::NONE,
    }
}

fn g2_binary(class: Class, l: Key, r: Key) -> Heads {
    match class {
        Class::Union => {
            if l.flag != r.flag || meet(l.first, r.first) {
                return Heads::NONE;
            }
            let theta = l.flag;
            if theta && (meet(l.first, r.followlast) || meet(l.followlast, r.first)) {
                return Heads::NONE;
            }
            Heads::one(Key::new(l.first | r.first, l.followlast | r.followlast, l.sym | r.sym, l.alpha || r.alpha, theta))
        }
        Class::Inter => {
            if l.flag != r.flag || meet(l.sym, r.sym) {
                return Heads::NONE;
            }
            Heads::one(Key::new(l.first | r.first, inter_followlast(l, r), l.sym | r.sym, l.alpha && r.alpha, l.flag))
        }
        Class::Concat => {
            if meet(l.followlast, r.first) || (l.alpha && meet(l.first, r.first)) {
                return Heads::NONE;
            }
            let (first, followlast) = concat_sets(l, r);
            let head = Key::new(first, followlast, l.sym | r.sym, l.alpha && r.alpha, false);
            let mut heads = Heads::NONE;
            if !l.flag && !r.flag {
                heads.push(head);
            }
            let linked = l.flag == r.alpha && r.flag == l.alpha;
            let guard = !meet(r.followlast, l.first) && (l.alpha || !r.alpha || !meet(l.first, r.first));
            if linked && guard {
                heads.push(Key { flag: true, ..head });
            }
            heads
        }
        _ => Heads::NONE,
    }
}

/// Base productions `R → a`. In the second variant both values of `ct` are
/// admitted, since an atom's own `ct` is always false whatever its context.
pub fn base_keys(k: usize, variant: Variant) -> Vec<(Key, usize)> {
    let mut out = Vec::new();
    for i in 0..k {
        let bit = 1u32 << i;
        out.push((Key::new(bit, 0, bit, false, true), i));
        if variant == Variant::G2 {
            out.push((Key::new(bit, 0, bit, false, false), i));
        }
    }
    out.sort();
    out
}

/// The closed-form usefulness test for the first variant:
/// `S∩F ≠ ∅`, `F∪L ⊆ S`, `F∩L = ∅ ⇒ β`, and `¬α ∧ β ⇒ F ⊄ L`.
pub fn useful(key: &Key) -> bool {
    let Key { first: f, followlast: l, sym: s, alpha, flag: beta } = *key;
    meet(s, f) && (f | l) & !s == 0 && (meet(f, l) || beta) && !(!alpha && beta && f & !l == 0)
}
