//! Extended regular expressions over a small alphabet: ε, ∅, letters, union,
//! concatenation, shuffle (`&`) and numeric counters `E[m,n]`.
//!
//! `?` and `*` are not separate node kinds. They parse straight into the
//! counters `[0,1]` and `[0,inf]`, and the printer renders those counters back
//! with the short forms.

mod mark;
mod parse;
mod path;
mod print;
mod simplify;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use mark::{mark, unmark};
pub use parse::{parse, ParseError, ParseErrorKind};
pub use path::Path;
pub use simplify::{desugar, simplify};

/// Largest supported alphabet.
pub const MAX_LETTERS: usize = 26;

/// A letter of the active alphabet, rendered `a`, `b`, `c`, ...
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Letter(u8);

impl Letter {
    pub fn new(id: usize) -> Option<Letter> {
        (id < MAX_LETTERS).then_some(Letter(id as u8))
    }

    pub fn from_char(c: char) -> Option<Letter> {
        c.is_ascii_lowercase().then(|| Letter(c as u8 - b'a'))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn to_char(self) -> char {
        (b'a' + self.0) as char
    }

    pub fn bit(self) -> u32 {
        1 << self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A letter together with its occurrence subscript (1-based, per letter).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Marked {
    pub letter: Letter,
    pub sub: u32,
}

impl fmt::Display for Marked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        write!(f, "{}", self.letter)?;
        for d in self.sub.to_string().bytes() {
            write!(f, "{}", DIGITS[(d - b'0') as usize])?;
        }
        Ok(())
    }
}

/// What can sit at a leaf of an expression tree.
pub trait Atom: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static> Atom for T {}

/// A leaf that stands for a letter of the alphabet.
pub trait Symbol: Atom {
    fn letter(&self) -> Letter;
}

impl Symbol for Letter {
    fn letter(&self) -> Letter {
        *self
    }
}

impl Symbol for Marked {
    fn letter(&self) -> Letter {
        self.letter
    }
}

/// Upper bound of a counter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Upper {
    Fin(u32),
    Inf,
}

impl Upper {
    pub fn finite(self) -> Option<u32> {
        match self {
            Upper::Fin(n) => Some(n),
            Upper::Inf => None,
        }
    }

    /// True when the bound is at least `n`.
    pub fn at_least(self, n: u32) -> bool {
        match self {
            Upper::Fin(m) => m >= n,
            Upper::Inf => true,
        }
    }

    pub fn minus_one(self) -> Upper {
        match self {
            Upper::Fin(n) => Upper::Fin(n.saturating_sub(1)),
            Upper::Inf => Upper::Inf,
        }
    }
}

impl fmt::Display for Upper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Upper::Fin(n) => write!(f, "{n}"),
            Upper::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr<S> {
    Epsilon,
    Empty,
    Sym(S),
    Union(Box<Expr<S>>, Box<Expr<S>>),
    Concat(Box<Expr<S>>, Box<Expr<S>>),
    Shuffle(Box<Expr<S>>, Box<Expr<S>>),
    Counter(Box<Expr<S>>, u32, Upper),
}

pub type ExtExpr = Expr<Letter>;
pub type MarkedExpr = Expr<Marked>;

/// Node kind without the payload, handy for matching on shapes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Epsilon,
    Empty,
    Sym,
    Union,
    Concat,
    Shuffle,
    Counter,
}

impl<S: Atom> Expr<S> {
    pub fn sym(s: S) -> Self {
        Expr::Sym(s)
    }

    pub fn union(l: Self, r: Self) -> Self {
        Expr::Union(Box::new(l), Box::new(r))
    }

    pub fn concat(l: Self, r: Self) -> Self {
        Expr::Concat(Box::new(l), Box::new(r))
    }

    pub fn shuffle(l: Self, r: Self) -> Self {
        Expr::Shuffle(Box::new(l), Box::new(r))
    }

    /// Panics on bounds outside the counter domain; use `try_counter` for input.
    pub fn counter(body: Self, lo: u32, hi: Upper) -> Self {
        Self::try_counter(body, lo, hi).expect("counter bounds")
    }

    pub fn try_counter(body: Self, lo: u32, hi: Upper) -> Result<Self, BoundsError> {
        match hi {
            Upper::Fin(0) => Err(BoundsError::ZeroUpper),
            Upper::Fin(n) if lo > n => Err(BoundsError::LowAboveHigh { lo, hi: n }),
            _ => Ok(Expr::Counter(Box::new(body), lo, hi)),
        }
    }

    pub fn opt(body: Self) -> Self {
        Expr::Counter(Box::new(body), 0, Upper::Fin(1))
    }

    pub fn star(body: Self) -> Self {
        Expr::Counter(Box::new(body), 0, Upper::Inf)
    }

    pub fn kind(&self) -> Kind {
        match self {
            Expr::Epsilon => Kind::Epsilon,
            Expr::Empty => Kind::Empty,
            Expr::Sym(_) => Kind::Sym,
            Expr::Union(..) => Kind::Union,
            Expr::Concat(..) => Kind::Concat,
            Expr::Shuffle(..) => Kind::Shuffle,
            Expr::Counter(..) => Kind::Counter,
        }
    }

    pub fn children(&self) -> Vec<&Expr<S>> {
        match self {
            Expr::Epsilon | Expr::Empty | Expr::Sym(_) => vec![],
            Expr::Union(l, r) | Expr::Concat(l, r) | Expr::Shuffle(l, r) => vec![l, r],
            Expr::Counter(b, _, _) => vec![b],
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Expr::Epsilon | Expr::Empty | Expr::Sym(_))
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Leaf symbols in left-to-right order, with repetitions.
    pub fn symbols(&self) -> Vec<S> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<S>) {
        match self {
            Expr::Sym(s) => out.push(*s),
            _ => self.children().into_iter().for_each(|c| c.collect_symbols(out)),
        }
    }

    pub fn contains_empty(&self) -> bool {
        match self {
            Expr::Empty => true,
            _ => self.children().into_iter().any(|c| c.contains_empty()),
        }
    }

    pub fn map_symbols<T: Atom>(&self, f: &mut impl FnMut(S) -> T) -> Expr<T> {
        match self {
            Expr::Epsilon => Expr::Epsilon,
            Expr::Empty => Expr::Empty,
            Expr::Sym(s) => Expr::Sym(f(*s)),
            Expr::Union(l, r) => Expr::union(l.map_symbols(f), r.map_symbols(f)),
            Expr::Concat(l, r) => Expr::concat(l.map_symbols(f), r.map_symbols(f)),
            Expr::Shuffle(l, r) => Expr::shuffle(l.map_symbols(f), r.map_symbols(f)),
            Expr::Counter(b, lo, hi) => Expr::Counter(Box::new(b.map_symbols(f)), *lo, *hi),
        }
    }

    pub fn at(&self, path: &Path) -> Option<&Expr<S>> {
        let mut cur = self;
        for &i in path.steps() {
            cur = *cur.children().get(i as usize)?;
        }
        Some(cur)
    }

    /// Replace the subexpression at `path`; `None` if the path leaves the tree.
    pub fn replace_at(&self, path: &Path, with: Expr<S>) -> Option<Expr<S>> {
        fn go<S: Atom>(e: &Expr<S>, steps: &[u8], with: Expr<S>) -> Option<Expr<S>> {
            let Some((&i, rest)) = steps.split_first() else {
                return Some(with);
            };
            Some(match (e, i) {
                (Expr::Union(l, r), 0) => Expr::union(go(l, rest, with)?, (**r).clone()),
                (Expr::Union(l, r), 1) => Expr::union((**l).clone(), go(r, rest, with)?),
                (Expr::Concat(l, r), 0) => Expr::concat(go(l, rest, with)?, (**r).clone()),
                (Expr::Concat(l, r), 1) => Expr::concat((**l).clone(), go(r, rest, with)?),
                (Expr::Shuffle(l, r), 0) => Expr::shuffle(go(l, rest, with)?, (**r).clone()),
                (Expr::Shuffle(l, r), 1) => Expr::shuffle((**l).clone(), go(r, rest, with)?),
                (Expr::Counter(b, lo, hi), 0) => Expr::Counter(Box::new(go(b, rest, with)?), *lo, *hi),
                _ => return None,
            })
        }
        go(self, path.steps(), with)
    }

    /// Every node with its path, in pre-order.
    pub fn nodes(&self) -> Vec<(Path, &Expr<S>)> {
        let mut out = Vec::new();
        let mut stack = vec![(Path::root(), self)];
        while let Some((p, e)) = stack.pop() {
            let kids = e.children();
            for (i, c) in kids.into_iter().enumerate().rev() {
                stack.push((p.child(i as u8), c));
            }
            out.push((p, e));
        }
        out
    }

    /// Largest finite counter bound in the tree (1 when there is none).
    pub fn max_finite_bound(&self) -> u32 {
        let own = match self {
            Expr::Counter(_, lo, Upper::Fin(n)) => (*lo).max(*n),
            Expr::Counter(_, lo, Upper::Inf) => *lo,
            _ => 1,
        };
        self.children().into_iter().map(|c| c.max_finite_bound()).fold(own.max(1), u32::max)
    }
}

impl<S: Symbol> Expr<S> {
    /// Bitmask of the letters occurring in the expression.
    pub fn letter_mask(&self) -> u32 {
        self.symbols().iter().fold(0, |m, s| m | s.letter().bit())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("counter upper bound must be at least 1")]
    ZeroUpper,
    #[error("counter lower bound {lo} exceeds upper bound {hi}")]
    LowAboveHigh { lo: u32, hi: u32 },
}

fn bit_length(n: u64) -> u64 {
    if n <= 1 {
        1
    } else {
        64 - n.leading_zeros() as u64
    }
}

/// Symbols, ε/∅ leaves and operator nodes count 1 each; a counter also adds
/// the binary lengths of its bounds, with `inf` counting as 1.
pub fn size<S: Atom>(e: &Expr<S>) -> u64 {
    match e {
        Expr::Epsilon | Expr::Empty | Expr::Sym(_) => 1,
        Expr::Union(l, r) | Expr::Concat(l, r) | Expr::Shuffle(l, r) => 1 + size(l) + size(r),
        Expr::Counter(b, lo, hi) => {
            let hb = match hi {
                Upper::Fin(n) => bit_length(*n as u64),
                Upper::Inf => 1,
            };
            1 + bit_length(*lo as u64) + hb + size(b)
        }
    }
}

/// Size contribution of a counter node on its own, excluding the body.
pub fn counter_cost(lo: u32, hi: Upper) -> u64 {
    let hb = match hi {
        Upper::Fin(n) => bit_length(n as u64),
        Upper::Inf => 1,
    };
    1 + bit_length(lo as u64) + hb
}

impl<S: Atom> fmt::Display for Expr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

pub use print::print;
