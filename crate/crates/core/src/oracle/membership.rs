use std::collections::HashMap;

use super::nfa::Nfa;
use crate::expr::{Expr, Upper};

/// Decides `w ∈ L(e)`.
///
/// Each node is matched against a subset of the word's positions (read in
/// order), which is what a shuffle operand sees. Results are memoised per
/// (node, position mask). Words longer than 63 symbols fall back to running
/// the position automaton.
pub fn membership<S: Copy + Ord + std::hash::Hash>(e: &Expr<S>, w: &[S]) -> bool {
    if w.len() > 63 {
        return Nfa::build(e, usize::MAX).map(|n| n.accepts(w)).unwrap_or(false);
    }
    let mut m = Matcher { nodes: Vec::new(), word: w, memo: HashMap::new(), rep_memo: HashMap::new() };
    let root = m.flatten(e);
    let full = if w.is_empty() { 0 } else { (1u64 << w.len()) - 1 };
    m.matches(root, full)
}

enum Node<S> {
    Eps,
    Empty,
    Sym(S),
    Union(usize, usize),
    Concat(usize, usize),
    Shuffle(usize, usize),
    Counter(usize, u32, Upper),
}

struct Matcher<'w, S> {
    nodes: Vec<(Node<S>, bool)>,
    word: &'w [S],
    memo: HashMap<(usize, u64), bool>,
    rep_memo: HashMap<(usize, u64, u32, u32), bool>,
}

impl<S: Copy + Ord> Matcher<'_, S> {
    fn flatten(&mut self, e: &Expr<S>) -> usize {
        let (node, nullable) = match e {
            Expr::Epsilon => (Node::Eps, true),
            Expr::Empty => (Node::Empty, false),
            Expr::Sym(s) => (Node::Sym(*s), false),
            Expr::Union(l, r) => {
                let (a, b) = (self.flatten(l), self.flatten(r));
                (Node::Union(a, b), self.nodes[a].1 || self.nodes[b].1)
            }
            Expr::Concat(l, r) => {
                let (a, b) = (self.flatten(l), self.flatten(r));
                (Node::Concat(a, b), self.nodes[a].1 && self.nodes[b].1)
            }
            Expr::Shuffle(l, r) => {
                let (a, b) = (self.flatten(l), self.flatten(r));
                (Node::Shuffle(a, b), self.nodes[a].1 && self.nodes[b].1)
            }
            Expr::Counter(body, lo, hi) => {
                let a = self.flatten(body);
                (Node::Counter(a, *lo, *hi), *lo == 0 || self.nodes[a].1)
            }
        };
        self.nodes.push((node, nullable));
        self.nodes.len() - 1
    }

    fn matches(&mut self, n: usize, mask: u64) -> bool {
        if mask == 0 {
            return self.nodes[n].1;
        }
        if let Some(&r) = self.memo.get(&(n, mask)) {
            return r;
        }
        let r = match self.nodes[n].0 {
            Node::Eps | Node::Empty => false,
            Node::Sym(s) => mask.count_ones() == 1 && self.word[mask.trailing_zeros() as usize] == s,
            Node::Union(a, b) => self.matches(a, mask) || self.matches(b, mask),
            Node::Concat(a, b) => prefixes(mask).any(|p| self.matches(a, p) && self.matches(b, mask ^ p)),
            Node::Shuffle(a, b) => submasks(mask).any(|p| self.matches(a, p) && self.matches(b, mask ^ p)),
            Node::Counter(a, lo, hi) => {
                let left = hi.finite().unwrap_or(u32::MAX);
                self.repeat(a, mask, lo, left)
            }
        };
        self.memo.insert((n, mask), r);
        r
    }

    /// Can the positions in `mask` be cut into nonempty chunks of `body`, at
    /// least `need` and at most `left` of them, padding with ε iterations
    /// when the body is nullable?
    fn repeat(&mut self, body: usize, mask: u64, need: u32, left: u32) -> bool {
        let pop = mask.count_ones();
        let nullable = self.nodes[body].1;
        let need = if nullable { 0 } else { need };
        let left = left.min(pop);
        if mask == 0 {
            return need == 0;
        }
        if need > pop || left == 0 {
            return false;
        }
        if let Some(&r) = self.rep_memo.get(&(body, mask, need, left)) {
            return r;
        }
        let r = prefixes(mask)
            .filter(|&p| p != 0)
            .any(|p| self.matches(body, p) && self.repeat(body, mask ^ p, need.saturating_sub(1), left - 1));
        self.rep_memo.insert((body, mask, need, left), r);
        r
    }
}

/// The masks made of the lowest k set bits of `mask`, for k = 0..=popcount.
fn prefixes(mask: u64) -> impl Iterator<Item = u64> {
    let mut acc = 0u64;
    let mut rest = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = acc;
        if rest == 0 {
            done = true;
        } else {
            let low = rest & rest.wrapping_neg();
            acc |= low;
            rest ^= low;
        }
        Some(out)
    })
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(out)
    })
}
