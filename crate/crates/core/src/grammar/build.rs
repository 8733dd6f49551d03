use std::io::{self, Write};

use serde::Serialize;

use super::{base_keys, combine_with, useful, Class, CountHead, Key, Variant};
use crate::expr::Letter;
use crate::symset::mask_to_string;

/// Largest projected production count an unsimplified build will attempt.
pub const DEFAULT_PRODUCTION_CAP: u64 = 20_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("alphabet size {0} is outside 1..=4")]
    Alphabet(usize),
    #[error("about {projected} productions projected, above the cap of {cap}")]
    TooLarge { projected: u64, cap: u64 },
}

/// A production over nonterminal ids. Base productions keep the letter index
/// in `left`; unary productions have no `right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub class: Class,
    pub head: u32,
    pub left: u32,
    pub right: u32,
}

impl Production {
    pub fn right(&self) -> Option<u32> {
        (self.right != NONE).then_some(self.right)
    }
}

#[derive(Debug, Clone)]
pub struct Grammar {
    pub variant: Variant,
    pub sigma: usize,
    pub simplified: bool,
    /// Every key is also a start symbol. The extra nonterminal for `∅ | ε`
    /// and the counter nonterminals `C`, `A`, `B` are implicit.
    pub nonterminals: Vec<Key>,
    pub productions: Vec<Production>,
    ids: Vec<u32>,
}

impl Grammar {
    pub fn id(&self, key: &Key) -> Option<u32> {
        let i = key.index(self.sigma);
        self.ids.get(i).copied().filter(|&id| id != NONE)
    }

    pub fn key(&self, id: u32) -> Key {
        self.nonterminals[id as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub variant: Variant,
    pub sigma: usize,
    pub simplify: bool,
    pub count_head: CountHead,
    pub production_cap: u64,
}

impl BuildOptions {
    pub fn new(variant: Variant, sigma: usize, simplify: bool) -> BuildOptions {
        BuildOptions { variant, sigma, simplify, count_head: CountHead::ChildAlpha, production_cap: DEFAULT_PRODUCTION_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nonterminals: u64,
    pub productions: u64,
}

/// Number of keys over `k` letters: `4·8^k`.
pub fn key_count(k: usize) -> usize {
    4usize << (3 * k)
}

pub fn build(variant: Variant, sigma: usize, simplify: bool) -> Result<Grammar, BuildError> {
    build_with(BuildOptions::new(variant, sigma, simplify))
}

/// Builds the grammar. The unsimplified grammar takes every key; binary
/// classes range over all keys except `(∅,∅,∅,0,0)`, and Opt, Star and Count
/// also skip `(∅,∅,∅,1,1)`. The simplified grammar keeps the useful keys
/// (closed form for the first variant, productivity fixpoint for the second)
/// and the productions among them.
pub fn build_with(opts: BuildOptions) -> Result<Grammar, BuildError> {
    let k = opts.sigma;
    if !(1..=4).contains(&k) {
        return Err(BuildError::Alphabet(k));
    }
    let keys: Vec<Key> = if opts.simplify {
        match opts.variant {
            Variant::G1 => lemma_useful_keys(k),
            Variant::G2 => fixpoint_productive(Variant::G2, k, false, opts.count_head),
        }
    } else {
        let ops = key_count(k) as u64 - 1;
        let projected = 3 * ops * ops + 2 * ops + k as u64;
        if projected > opts.production_cap {
            return Err(BuildError::TooLarge { projected, cap: opts.production_cap });
        }
        (0..key_count(k)).map(|i| Key::from_index(i, k)).collect()
    };
    let mut ids = vec![NONE; key_count(k)];
    for (id, key) in keys.iter().enumerate() {
        ids[key.index(k)] = id as u32;
    }
    let mut g = Grammar { variant: opts.variant, sigma: k, simplified: opts.simplify, nonterminals: keys, productions: Vec::new(), ids };

    for (key, letter) in base_keys(k, opts.variant) {
        if let Some(head) = g.id(&key) {
            g.productions.push(Production { class: Class::Base, head, left: letter as u32, right: NONE });
        }
    }
    let empty = Key::new(0, 0, 0, false, false);
    let eps = Key::new(0, 0, 0, true, true);
    let operands: Vec<(u32, Key)> = g
        .nonterminals
        .iter()
        .enumerate()
        .filter(|(_, key)| opts.simplify || **key != empty)
        .map(|(i, key)| (i as u32, *key))
        .collect();
    let mut out = Vec::new();
    for class in [Class::Union, Class::Concat, Class::Inter] {
        for &(a, ka) in &operands {
            for &(b, kb) in &operands {
                for head in &combine_with(class, ka, Some(kb), opts.variant, opts.count_head) {
                    if let Some(h) = g.id(head) {
                        out.push(Production { class, head: h, left: a, right: b });
                    }
                }
            }
        }
    }
    for class in [Class::Opt, Class::Star, Class::Count] {
        for &(a, ka) in operands.iter().filter(|(_, key)| opts.simplify || *key != eps) {
            for head in &combine_with(class, ka, None, opts.variant, opts.count_head) {
                if let Some(h) = g.id(head) {
                    out.push(Production { class, head: h, left: a, right: NONE });
                }
            }
        }
    }
    g.productions.extend(out);
    Ok(g)
}

/// `|N|` counts the keys plus the one nonterminal for `∅ | ε`; `C`, `A` and
/// `B` are left out. `|P|` leaves out Count productions and the counter
/// rules; `R → ε` is counted in the simplified grammar only.
pub fn stats(g: &Grammar) -> Stats {
    let productions = g.productions.iter().filter(|p| p.class != Class::Count).count() as u64;
    Stats { nonterminals: g.nonterminals.len() as u64 + 1, productions: productions + g.simplified as u64 }
}

/// Keys passing the closed-form usefulness test.
pub fn lemma_useful_keys(k: usize) -> Vec<Key> {
    let mut out: Vec<Key> = (0..key_count(k)).map(|i| Key::from_index(i, k)).filter(useful).collect();
    out.sort();
    out
}

/// Keys that derive a terminal string, by rounds from the Base productions.
/// Count productions take part only when `with_count` is set.
pub fn fixpoint_productive(variant: Variant, k: usize, with_count: bool, count_head: CountHead) -> Vec<Key> {
    let mut seen = vec![false; key_count(k)];
    let mut productive: Vec<Key> = Vec::new();
    for (key, _) in base_keys(k, variant) {
        if !seen[key.index(k)] {
            seen[key.index(k)] = true;
            productive.push(key);
        }
    }
    let unary: &[Class] = if with_count { &[Class::Opt, Class::Star, Class::Count] } else { &[Class::Opt, Class::Star] };
    loop {
        let mut fresh = Vec::new();
        let mut add = |key: &Key, fresh: &mut Vec<Key>| {
            let i = key.index(k);
            if !seen[i] {
                seen[i] = true;
                fresh.push(*key);
            }
        };
        for class in [Class::Union, Class::Concat, Class::Inter] {
            for &a in &productive {
                for &b in &productive {
                    for head in &combine_with(class, a, Some(b), variant, count_head) {
                        add(head, &mut fresh);
                    }
                }
            }
        }
        for &class in unary {
            for &a in &productive {
                for head in &combine_with(class, a, None, variant, count_head) {
                    add(head, &mut fresh);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        productive.extend(fresh);
    }
    productive.sort();
    productive
}

/// Text export: a header, one `N` line per nonterminal, one `P` line per
/// production, then the counter rules. Keys are listed in sorted order and
/// productions by class, head and operands.
pub fn export(g: &Grammar, out: &mut impl Write) -> io::Result<()> {
    let flag = match g.variant {
        Variant::G1 => "beta",
        Variant::G2 => "theta",
    };
    writeln!(out, "grammar {} sigma={} simplified={}", g.variant, g.sigma, g.simplified)?;
    let mut order: Vec<u32> = (0..g.nonterminals.len() as u32).collect();
    order.sort_by_key(|&i| g.key(i));
    let mut rank = vec![0u32; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i as usize] = r as u32;
    }
    for &i in &order {
        let key = g.key(i);
        writeln!(
            out,
            "N {} F={} L={} S={} alpha={} {}={}",
            rank[i as usize],
            mask_to_string(key.first),
            mask_to_string(key.followlast),
            mask_to_string(key.sym),
            key.alpha as u8,
            flag,
            key.flag as u8
        )?;
    }
    writeln!(out, "N R0")?;
    let mut prods: Vec<(Class, u32, u32, u32)> = g
        .productions
        .iter()
        .map(|p| match p.class {
            Class::Base => (p.class, rank[p.head as usize], p.left, NONE),
            _ => (p.class, rank[p.head as usize], rank[p.left as usize], p.right().map_or(NONE, |r| rank[r as usize])),
        })
        .collect();
    prods.sort_unstable();
    for (class, head, left, right) in prods {
        match class {
            Class::Base => writeln!(out, "P base {head} {}", Letter::new(left as usize).expect("letter"))?,
            Class::Count => writeln!(out, "P count {head} {left} [C]")?,
            _ if right != NONE => writeln!(out, "P {} {head} {left} {right}", class.name())?,
            _ => writeln!(out, "P {} {head} {left}", class.name())?,
        }
    }
    writeln!(out, "P R0 eps")?;
    writeln!(out, "P R0 empty")?;
    writeln!(out, "C -> n A m")?;
    writeln!(out, "A -> n A m | B")?;
    writeln!(out, "B -> n B | n")?;
    Ok(())
}
