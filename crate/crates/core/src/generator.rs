//! Random deterministic expressions from the simplified first-variant grammar,
//! without building the grammar.
//!
//! A start key is drawn uniformly among the useful keys over the alphabet
//! (plus the ε nonterminal). Each key is then expanded top-down: a production
//! class is picked by weight, and operand keys are proposed letter by letter
//! so that [`combine`] gives back exactly the key being expanded. Proposals
//! whose operand keys are not useful, or whose lower size bounds overflow the
//! remaining budget, are rejected. Dead ends backtrack; an attempt that runs
//! out of steps restarts from a fresh start key.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::attrs::AttributedTree;
use crate::checker::determ_w_tree;
use crate::expr::{counter_cost, size, Expr, ExtExpr, Letter, Upper, MAX_LETTERS};
use crate::grammar::{combine, expr_key, useful, Class, Key, Variant};

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub alphabet_size: usize,
    pub max_size: u64,
    pub seed: u64,
    pub restart_cap: u32,
    /// Base, Union, Concat, Inter, Opt, Star, Count.
    pub class_weights: [f64; 7],
    /// Largest finite counter bound emitted.
    pub counter_value_cap: u32,
}

impl GenConfig {
    pub fn new(alphabet_size: usize, max_size: u64, seed: u64) -> GenConfig {
        GenConfig { alphabet_size, max_size, seed, restart_cap: 10_000, class_weights: [1.0; 7], counter_value_cap: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("no expression found after {0} restarts")]
    Exhausted(u32),
    #[error("generated {expr} violates {what}")]
    Postcondition { expr: String, what: &'static str },
}

#[derive(Debug, Clone, Serialize)]
pub struct GenResult {
    #[serde(serialize_with = "ser_expr")]
    pub expr: ExtExpr,
    /// `None` for the ε nonterminal.
    pub key: Option<Key>,
    /// `(key, class)` choices in pre-order.
    pub trace: Vec<(Key, Class)>,
    pub restarts: u32,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn ser_expr<S: serde::Serializer>(e: &ExtExpr, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::expr::print(e))
}

/// Steps (key expansions) allowed per attempt.
const STEP_CAP: u32 = 4_000;
/// Operand proposals per class and key.
const PROPOSALS: u32 = 24;

pub fn generate(cfg: &GenConfig) -> Result<GenResult, GenError> {
    validate(cfg)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for restarts in 0..cfg.restart_cap {
        let Some(start) = sample_start(&mut rng, cfg) else {
            return finish(Expr::Epsilon, None, Vec::new(), restarts, cfg, started);
        };
        let mut g = Gen { rng: &mut rng, cfg, steps: 0, trace: Vec::new() };
        if let Some(e) = g.expand(start, cfg.max_size) {
            let trace = std::mem::take(&mut g.trace);
            return finish(e, Some(start), trace, restarts, cfg, started);
        }
    }
    Err(GenError::Exhausted(cfg.restart_cap))
}

/// `count` results; item `i` runs with its own seed derived from
/// `cfg.seed` and `i`.
pub fn generate_batch(cfg: &GenConfig, count: usize) -> Vec<Result<GenResult, GenError>> {
    (0..count).map(|i| generate(&GenConfig { seed: item_seed(cfg.seed, i as u64), ..cfg.clone() })).collect()
}

/// SplitMix64 step.
pub fn item_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add((i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn validate(cfg: &GenConfig) -> Result<(), GenError> {
    if cfg.alphabet_size == 0 || cfg.alphabet_size > MAX_LETTERS {
        return Err(GenError::Config("alphabet size must be in 1..=26"));
    }
    if cfg.max_size < 1 {
        return Err(GenError::Config("max size must be at least 1"));
    }
    if cfg.restart_cap < 1 {
        return Err(GenError::Config("restart cap must be at least 1"));
    }
    if cfg.class_weights.iter().any(|w| w.is_nan() || *w <= 0.0) {
        return Err(GenError::Config("class weights must be positive"));
    }
    if cfg.counter_value_cap < 2 {
        return Err(GenError::Config("counter value cap must be at least 2"));
    }
    Ok(())
}

fn finish(
    expr: ExtExpr,
    key: Option<Key>,
    trace: Vec<(Key, Class)>,
    restarts: u32,
    cfg: &GenConfig,
    started: Instant,
) -> Result<GenResult, GenError> {
    let bad = |what| Err(GenError::Postcondition { expr: crate::expr::print(&expr), what });
    if size(&expr) > cfg.max_size {
        return bad("the size budget");
    }
    if expr.symbols().iter().any(|l| l.index() >= cfg.alphabet_size) {
        return bad("the alphabet");
    }
    let tree = AttributedTree::new(&expr);
    if !determ_w_tree(&tree).deterministic {
        return bad("determinism");
    }
    if let Some(k) = key {
        if expr_key(tree.root(), Variant::G1) != k {
            return bad("its start key");
        }
    }
    Ok(GenResult { expr, key, trace, restarts, elapsed: started.elapsed() })
}

/// Lower bound on the size of any expression with this key: every letter
/// occurs, leaves are joined by binary nodes, and a nullable key needs at
/// least one `?` or `*`.
pub fn lower_bound(k: &Key) -> u64 {
    2 * k.sym.count_ones() as u64 - 1 + 3 * k.alpha as u64
}

/// Uniform over the useful keys within budget and the ε nonterminal, by
/// rejection. Each letter is outside `S`, or inside with one of four
/// first/followlast memberships. `None` stands for ε.
fn sample_start(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Option<Key> {
    let slots = 4 * 5u64.pow(cfg.alphabet_size as u32) + 1;
    loop {
        if rng.random_range(0..slots) == 0 {
            return None;
        }
        let mut key = Key::new(0, 0, 0, rng.random(), rng.random());
        for i in 0..cfg.alphabet_size {
            let bit = 1u32 << i;
            match rng.random_range(0..5) {
                0 => {}
                c => {
                    key.sym |= bit;
                    if c & 1 == 1 {
                        key.first |= bit;
                    }
                    if c >= 3 {
                        key.followlast |= bit;
                    }
                }
            }
        }
        if useful(&key) && lower_bound(&key) <= cfg.max_size {
            return Some(key);
        }
    }
}

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    cfg: &'a GenConfig,
    steps: u32,
    trace: Vec<(Key, Class)>,
}

impl Gen<'_> {
    fn expand(&mut self, key: Key, budget: u64) -> Option<ExtExpr> {
        self.steps += 1;
        if self.steps > STEP_CAP || lower_bound(&key) > budget {
            return None;
        }
        let mut classes: Vec<(Class, f64)> = Class::ALL
            .iter()
            .zip(self.cfg.class_weights)
            .filter(|(c, _)| applicable(**c, &key))
            .map(|(c, w)| (*c, w))
            .collect();
        while !classes.is_empty() {
            let total: f64 = classes.iter().map(|c| c.1).sum();
            let mut pick = self.rng.random_range(0.0..total);
            let mut idx = classes.len() - 1;
            for (i, c) in classes.iter().enumerate() {
                if pick < c.1 {
                    idx = i;
                    break;
                }
                pick -= c.1;
            }
            let (class, _) = classes.swap_remove(idx);
            let mark = self.trace.len();
            self.trace.push((key, class));
            if let Some(e) = self.expand_with(class, key, budget) {
                return Some(e);
            }
            self.trace.truncate(mark);
            if self.steps > STEP_CAP {
                return None;
            }
        }
        None
    }

    fn expand_with(&mut self, class: Class, key: Key, budget: u64) -> Option<ExtExpr> {
        match class {
            Class::Base => Some(Expr::Sym(Letter::new(key.sym.trailing_zeros() as usize)?)),
            Class::Union | Class::Concat | Class::Inter => {
                for _ in 0..PROPOSALS {
                    let Some((l, r)) = self.propose_binary(class, key) else { continue };
                    let (lb1, lb2) = (lower_bound(&l), lower_bound(&r));
                    if lb1 + lb2 + 1 > budget {
                        continue;
                    }
                    let b1 = self.rng.random_range(lb1..=budget - 1 - lb2);
                    let mark = self.trace.len();
                    let Some(e1) = self.expand(l, b1) else {
                        if self.steps > STEP_CAP {
                            return None;
                        }
                        continue;
                    };
                    let rest = budget - 1 - size(&e1);
                    if let Some(e2) = self.expand(r, rest) {
                        return Some(match class {
                            Class::Union => Expr::union(e1, e2),
                            Class::Concat => Expr::concat(e1, e2),
                            _ => Expr::shuffle(e1, e2),
                        });
                    }
                    self.trace.truncate(mark);
                    if self.steps > STEP_CAP {
                        return None;
                    }
                }
                None
            }
            Class::Opt | Class::Star => {
                let cost = counter_cost(0, if class == Class::Opt { Upper::Fin(1) } else { Upper::Inf });
                if budget < cost {
                    return None;
                }
                for _ in 0..PROPOSALS {
                    let Some(child) = self.propose_unary(class, key) else { continue };
                    if lower_bound(&child) + cost > budget {
                        continue;
                    }
                    if let Some(e) = self.expand(child, budget - cost) {
                        return Some(if class == Class::Opt { Expr::opt(e) } else { Expr::star(e) });
                    }
                    if self.steps > STEP_CAP {
                        return None;
                    }
                }
                None
            }
            Class::Count => {
                for _ in 0..PROPOSALS {
                    let hi = self.rng.random_range(2..=self.cfg.counter_value_cap);
                    let lo = self.rng.random_range(1..hi);
                    let cost = counter_cost(lo, Upper::Fin(hi));
                    let Some(child) = self.propose_unary(class, key) else { continue };
                    if lower_bound(&child) + cost > budget {
                        continue;
                    }
                    if let Some(e) = self.expand(child, budget - cost) {
                        return Some(Expr::counter(e, lo, Upper::Fin(hi)));
                    }
                    if self.steps > STEP_CAP {
                        return None;
                    }
                }
                None
            }
        }
    }

    /// Operand keys for a binary class: flags first, then every letter of
    /// `S` independently among the memberships that reproduce its bits in
    /// the head.
    fn propose_binary(&mut self, class: Class, key: Key) -> Option<(Key, Key)> {
        let mut flags: Vec<[bool; 4]> = (0..16u8)
            .map(|b| [b & 1 != 0, b & 2 != 0, b & 4 != 0, b & 8 != 0])
            .filter(|[a1, _, a2, _]| match class {
                Class::Union => (*a1 || *a2) == key.alpha,
                _ => (*a1 && *a2) == key.alpha,
            })
            .collect();
        flags.shuffle(self.rng);
        for [a1, b1, a2, b2] in flags.into_iter().take(4) {
            let mut l = Key::new(0, 0, 0, a1, b1);
            let mut r = Key::new(0, 0, 0, a2, b2);
            let mut ok = true;
            for i in 0..self.cfg.alphabet_size {
                let bit = 1u32 << i;
                if key.sym & bit == 0 {
                    continue;
                }
                let options = letter_options(class, bits_of(&key, bit), key.flag, [a1, b1, a2, b2]);
                let Some(&(lm, rm)) = options.choose(self.rng) else {
                    ok = false;
                    break;
                };
                apply(&mut l, lm, bit);
                apply(&mut r, rm, bit);
            }
            if ok && useful(&l) && useful(&r) && combine(class, l, Some(r), Variant::G1).contains(&key) {
                return Some((l, r));
            }
        }
        None
    }

    fn propose_unary(&mut self, class: Class, key: Key) -> Option<Key> {
        let alpha = match class {
            Class::Count => key.alpha,
            _ => self.rng.random(),
        };
        let mut child = Key { alpha, ..key };
        if class != Class::Opt {
            child.followlast = key.followlast & !key.first;
            for i in 0..self.cfg.alphabet_size {
                let bit = 1u32 << i;
                if key.first & bit != 0 && self.rng.random() {
                    child.followlast |= bit;
                }
            }
        }
        (useful(&child) && combine(class, child, None, Variant::G1).contains(&key)).then_some(child)
    }
}

fn applicable(class: Class, k: &Key) -> bool {
    let letters = k.sym.count_ones();
    match class {
        Class::Base => letters == 1 && k.first == k.sym && k.followlast == 0 && !k.alpha && k.flag,
        Class::Union => k.first.count_ones() >= 2,
        Class::Concat => true,
        Class::Inter => letters >= 2,
        Class::Opt => k.alpha,
        Class::Star | Class::Count => k.alpha && k.flag && k.first & !k.followlast == 0,
    }
}

/// Membership of one letter: bits for (S, F, L).
type Bits = u8;

fn apply(k: &mut Key, bits: Bits, bit: u32) {
    if bits & 1 != 0 {
        k.sym |= bit;
    }
    if bits & 2 != 0 {
        k.first |= bit;
    }
    if bits & 4 != 0 {
        k.followlast |= bit;
    }
}

fn bits_of(k: &Key, bit: u32) -> Bits {
    (k.sym & bit != 0) as u8 | ((k.first & bit != 0) as u8) << 1 | ((k.followlast & bit != 0) as u8) << 2
}

/// Operand memberships of one letter that satisfy the side conditions on
/// that letter and give the head the bits `want` for it. Tabulated once per
/// class, head bits, head flag and operand flags.
fn letter_options(class: Class, want: Bits, flag: bool, flags: [bool; 4]) -> &'static [(Bits, Bits)] {
    static TABLE: OnceLock<Vec<Vec<(Bits, Bits)>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut table = vec![Vec::new(); 3 * 8 * 2 * 16];
        for (ci, class) in [Class::Union, Class::Concat, Class::Inter].into_iter().enumerate() {
            for f in 0..16u8 {
                let [a1, b1, a2, b2] = [f & 1 != 0, f & 2 != 0, f & 4 != 0, f & 8 != 0];
                for lm in (0..8u8).filter(|&b| b & 1 != 0 || b == 0) {
                    for rm in (0..8u8).filter(|&b| b & 1 != 0 || b == 0) {
                        let mut l = Key::new(0, 0, 0, a1, b1);
                        let mut r = Key::new(0, 0, 0, a2, b2);
                        apply(&mut l, lm, 1);
                        apply(&mut r, rm, 1);
                        let heads = combine(class, l, Some(r), Variant::G1);
                        let Some(h) = heads.as_slice().first() else { continue };
                        for flag in [false, true] {
                            if !flag || h.flag {
                                table[slot(ci, bits_of(h, 1), flag, f)].push((lm, rm));
                            }
                        }
                    }
                }
            }
        }
        table
    });
    let ci = match class {
        Class::Union => 0,
        Class::Concat => 1,
        _ => 2,
    };
    let f = flags.iter().enumerate().map(|(i, &b)| (b as u8) << i).sum();
    &table[slot(ci, want, flag, f)]
}

fn slot(class: usize, want: Bits, flag: bool, flags: u8) -> usize {
    ((class * 8 + want as usize) * 2 + flag as usize) * 16 + flags as usize
}
