//! Thompson-style automata whose transitions are labelled by symbol
//! positions (leaf occurrences in left-to-right order), so one automaton
//! answers both marked and unmarked questions. Shuffle is a product
//! construction and counters are unrolled, with `inf` becoming a loop.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::OracleError;
use crate::expr::{Expr, Upper};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Nfa<S> {
    pub states: usize,
    pub start: usize,
    pub accept: usize,
    /// Symbol at each position.
    pub positions: Vec<S>,
    eps: Vec<(u32, u32)>,
    edges: Vec<(u32, u32, u32)>,
    eps_out: Vec<Vec<u32>>,
    sym_out: Vec<Vec<(u32, u32)>>,
    co_reach: Vec<bool>,
}

/// Automaton under construction, positions already numbered.
struct Frag {
    states: usize,
    start: u32,
    accept: u32,
    eps: Vec<(u32, u32)>,
    edges: Vec<(u32, u32, u32)>,
}

impl Frag {
    fn leaf(pos: Option<u32>, empty: bool) -> Frag {
        match (pos, empty) {
            (Some(p), _) => Frag { states: 2, start: 0, accept: 1, eps: vec![], edges: vec![(0, p, 1)] },
            (None, true) => Frag { states: 2, start: 0, accept: 1, eps: vec![], edges: vec![] },
            (None, false) => Frag { states: 1, start: 0, accept: 0, eps: vec![], edges: vec![] },
        }
    }

    /// Copies `other` into `self` and returns the offset it was placed at.
    fn absorb(&mut self, other: &Frag) -> u32 {
        let off = self.states as u32;
        self.states += other.states;
        self.eps.extend(other.eps.iter().map(|&(a, b)| (a + off, b + off)));
        self.edges.extend(other.edges.iter().map(|&(a, p, b)| (a + off, p, b + off)));
        off
    }

    fn empty_shell() -> Frag {
        Frag { states: 0, start: 0, accept: 0, eps: vec![], edges: vec![] }
    }

    fn new_state(&mut self) -> u32 {
        self.states += 1;
        (self.states - 1) as u32
    }
}

struct Builder<S> {
    positions: Vec<S>,
    cap: usize,
}

impl<S: Copy> Builder<S> {
    fn check(&self, f: &Frag) -> Result<(), OracleError> {
        if f.states > self.cap || f.eps.len() + f.edges.len() > self.cap.saturating_mul(8) {
            Err(OracleError::TooManyStates { cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn build(&mut self, e: &Expr<S>) -> Result<Frag, OracleError> {
        let f = match e {
            Expr::Epsilon => Frag::leaf(None, false),
            Expr::Empty => Frag::leaf(None, true),
            Expr::Sym(s) => {
                self.positions.push(*s);
                Frag::leaf(Some(self.positions.len() as u32 - 1), false)
            }
            Expr::Union(l, r) => {
                let (a, b) = (self.build(l)?, self.build(r)?);
                let mut f = Frag::empty_shell();
                let s = f.new_state();
                let t = f.new_state();
                let oa = f.absorb(&a);
                let ob = f.absorb(&b);
                f.eps.extend([(s, a.start + oa), (s, b.start + ob), (a.accept + oa, t), (b.accept + ob, t)]);
                f.start = s;
                f.accept = t;
                f
            }
            Expr::Concat(l, r) => {
                let (a, b) = (self.build(l)?, self.build(r)?);
                let mut f = Frag::empty_shell();
                let oa = f.absorb(&a);
                let ob = f.absorb(&b);
                f.eps.push((a.accept + oa, b.start + ob));
                f.start = a.start + oa;
                f.accept = b.accept + ob;
                f
            }
            Expr::Shuffle(l, r) => {
                let (a, b) = (self.build(l)?, self.build(r)?);
                self.product(&a, &b)?
            }
            Expr::Counter(body, lo, hi) => {
                let b = self.build(body)?;
                self.repeat(&b, *lo, *hi)?
            }
        };
        self.check(&f)?;
        Ok(f)
    }

    fn product(&self, a: &Frag, b: &Frag) -> Result<Frag, OracleError> {
        let n = a.states.checked_mul(b.states).filter(|&n| n <= self.cap);
        let Some(states) = n else {
            return Err(OracleError::TooManyStates { cap: self.cap });
        };
        let bs = b.states as u32;
        let id = |p: u32, q: u32| p * bs + q;
        let mut f = Frag { states, start: id(a.start, b.start), accept: id(a.accept, b.accept), eps: vec![], edges: vec![] };
        for q in 0..bs {
            f.eps.extend(a.eps.iter().map(|&(p, p2)| (id(p, q), id(p2, q))));
            f.edges.extend(a.edges.iter().map(|&(p, x, p2)| (id(p, q), x, id(p2, q))));
        }
        for p in 0..a.states as u32 {
            f.eps.extend(b.eps.iter().map(|&(q, q2)| (id(p, q), id(p, q2))));
            f.edges.extend(b.edges.iter().map(|&(q, x, q2)| (id(p, q), x, id(p, q2))));
        }
        self.check(&f)?;
        Ok(f)
    }

    fn repeat(&self, b: &Frag, lo: u32, hi: Upper) -> Result<Frag, OracleError> {
        let copies = match hi {
            Upper::Fin(n) => n as usize,
            Upper::Inf => lo as usize + 1,
        };
        if copies.saturating_mul(b.states) > self.cap {
            return Err(OracleError::TooManyStates { cap: self.cap });
        }
        let mut f = Frag::empty_shell();
        let start = f.new_state();
        let end = f.new_state();
        f.start = start;
        f.accept = end;
        let mut cur = start;
        for i in 0..copies {
            let off = f.absorb(b);
            let (bs, bt) = (b.start + off, b.accept + off);
            let optional = i >= lo as usize;
            let looping = hi == Upper::Inf && i == copies - 1;
            if optional {
                f.eps.push((cur, end));
            }
            f.eps.push((cur, bs));
            if looping {
                f.eps.push((bt, cur));
            }
            cur = bt;
        }
        f.eps.push((cur, end));
        self.check(&f)?;
        Ok(f)
    }
}

impl<S: Copy + Ord + Hash> Nfa<S> {
    pub fn build(e: &Expr<S>, cap: usize) -> Result<Nfa<S>, OracleError> {
        let mut b = Builder { positions: Vec::new(), cap };
        let f = b.build(e)?;
        Ok(Nfa::from_frag(f, b.positions))
    }

    fn from_frag(f: Frag, positions: Vec<S>) -> Nfa<S> {
        let mut eps_out = vec![Vec::new(); f.states];
        let mut sym_out = vec![Vec::new(); f.states];
        let mut eps_in = vec![Vec::new(); f.states];
        let mut sym_in = vec![Vec::new(); f.states];
        for &(a, b) in &f.eps {
            eps_out[a as usize].push(b);
            eps_in[b as usize].push(a);
        }
        for &(a, p, b) in &f.edges {
            sym_out[a as usize].push((p, b));
            sym_in[b as usize].push(a);
        }
        let mut co_reach = vec![false; f.states];
        let mut queue = VecDeque::from([f.accept]);
        co_reach[f.accept as usize] = true;
        while let Some(s) = queue.pop_front() {
            for &p in eps_in[s as usize].iter().chain(sym_in[s as usize].iter()) {
                if !co_reach[p as usize] {
                    co_reach[p as usize] = true;
                    queue.push_back(p);
                }
            }
        }
        Nfa {
            states: f.states,
            start: f.start as usize,
            accept: f.accept as usize,
            positions,
            eps: f.eps,
            edges: f.edges,
            eps_out,
            sym_out,
            co_reach,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.eps.len() + self.edges.len()
    }

    pub fn is_co_reachable(&self, s: usize) -> bool {
        self.co_reach[s]
    }

    /// ε-closure restricted to states from which the accept state is reachable.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = vec![false; self.states];
        let mut stack: Vec<usize> = Vec::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            if self.co_reach[s] {
                out.push(s);
            }
            for &t in &self.eps_out[s] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t as usize);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn initial(&self) -> Vec<usize> {
        self.closure([self.start])
    }

    /// Outgoing (position, target) pairs of a state set, live targets only.
    pub fn moves<'a>(&'a self, set: &'a [usize]) -> impl Iterator<Item = (u32, usize)> + 'a {
        set.iter().flat_map(move |&s| self.sym_out[s].iter().map(|&(p, t)| (p, t as usize))).filter(|&(_, t)| self.co_reach[t])
    }

    pub fn step_pos(&self, set: &[usize], pos: u32) -> Vec<usize> {
        self.closure(self.moves(set).filter(|&(p, _)| p == pos).map(|(_, t)| t).collect::<Vec<_>>())
    }

    pub fn step_sym(&self, set: &[usize], sym: S) -> Vec<usize> {
        self.closure(self.moves(set).filter(|&(p, _)| self.positions[p as usize] == sym).map(|(_, t)| t).collect::<Vec<_>>())
    }

    pub fn is_accepting(&self, set: &[usize]) -> bool {
        set.binary_search(&self.accept).is_ok()
    }

    pub fn accepts(&self, w: &[S]) -> bool {
        let mut cur = self.initial();
        for &s in w {
            cur = self.step_sym(&cur, s);
            if cur.is_empty() {
                return false;
            }
        }
        self.is_accepting(&cur)
    }

    /// Every live state reachable from the start.
    pub fn live_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(s) = stack.pop() {
            let next = self.eps_out[s].iter().copied().chain(self.sym_out[s].iter().map(|&(_, t)| t));
            for t in next {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t as usize);
                }
            }
        }
        (0..self.states).filter(|&s| seen[s] && self.co_reach[s]).collect()
    }

    /// Is `w` a factor of some word of the language?
    pub fn has_factor(&self, w: &[S]) -> bool {
        let mut cur = self.closure(self.live_states());
        for &s in w {
            cur = self.step_sym(&cur, s);
            if cur.is_empty() {
                return false;
            }
        }
        !cur.is_empty()
    }

    /// Breadth-first subset construction where transitions are grouped by
    /// `class(position)`. Calls `visit(set, word_so_far_len, parent_index)`
    /// for each new subset; stops early when `visit` returns `Some`.
    pub fn explore<C: Copy + Ord + Hash, R>(
        &self,
        class: impl Fn(u32) -> C,
        dfa_cap: usize,
        mut visit: impl FnMut(&[usize], &[C]) -> Option<R>,
    ) -> Result<Option<R>, OracleError> {
        let init = self.initial();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<(Vec<usize>, Option<(usize, C)>)> = Vec::new();
        index.insert(init.clone(), 0);
        sets.push((init, None));
        let mut i = 0;
        while i < sets.len() {
            let word = path_to(&sets, i);
            if let Some(r) = visit(&sets[i].0, &word) {
                return Ok(Some(r));
            }
            let mut by_class: std::collections::BTreeMap<C, Vec<usize>> = Default::default();
            for (p, t) in self.moves(&sets[i].0) {
                by_class.entry(class(p)).or_default().push(t);
            }
            for (c, targets) in by_class {
                let next = self.closure(targets);
                if next.is_empty() || index.contains_key(&next) {
                    continue;
                }
                if sets.len() >= dfa_cap {
                    return Err(OracleError::TooManyStates { cap: dfa_cap });
                }
                index.insert(next.clone(), sets.len());
                sets.push((next, Some((i, c))));
            }
            i += 1;
        }
        Ok(None)
    }

    /// Shortest nonempty word in both languages, exploring the synchronised
    /// product of the two automata. Positions are compared by symbol.
    pub fn intersects_nonempty(&self, other: &Nfa<S>, cap: usize) -> Result<bool, OracleError> {
        let mut seen: HashMap<(usize, usize, bool), ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.start, other.start, false);
        seen.insert(start, ());
        queue.push_back(start);
        while let Some((p, q, moved)) = queue.pop_front() {
            if moved && p == self.accept && q == other.accept {
                return Ok(true);
            }
            let mut next = Vec::new();
            for &t in &self.eps_out[p] {
                next.push((t as usize, q, moved));
            }
            for &t in &other.eps_out[q] {
                next.push((p, t as usize, moved));
            }
            for &(x, t) in &self.sym_out[p] {
                for &(y, u) in &other.sym_out[q] {
                    if self.positions[x as usize] == other.positions[y as usize] {
                        next.push((t as usize, u as usize, true));
                    }
                }
            }
            for n in next {
                if !self.co_reach[n.0] || !other.co_reach[n.1] || seen.contains_key(&n) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(OracleError::TooManyStates { cap });
                }
                seen.insert(n, ());
                queue.push_back(n);
            }
        }
        Ok(false)
    }
}

fn path_to<C: Copy>(sets: &[(Vec<usize>, Option<(usize, C)>)], mut i: usize) -> Vec<C> {
    let mut out = Vec::new();
    while let Some((parent, c)) = sets[i].1 {
        out.push(c);
        i = parent;
    }
    out.reverse();
    out
}
