//! Three structural determinism checkers.
//!
//! - [`determ_w`] works on the unmarked expression and uses 𝒲 at counters.
//! - [`determ_unmarked`] also works on the unmarked expression; it replaces 𝒲
//!   with the `ct` flag and never looks below a counter again.
//! - [`determ_marked`] marks the expression and compares followlast/first of
//!   counter bodies position by position.
//!
//! Every checker tests the children before the node itself, left child first,
//! so the reported locus is the deepest failing node on the leftmost path.

use serde::Serialize;

use crate::attrs::AttributedTree;
use crate::expr::{mark, ExtExpr, Kind, Path, Symbol, Upper};
use crate::symset::letters_disjoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub deterministic: bool,
    pub locus: Option<Path>,
    pub violated_clause: Option<&'static str>,
    /// Binary nodes and iterating counters (upper bound at least 2) in the
    /// order they were entered.
    pub visited_nodes: Vec<Path>,
    /// Number of nodes entered, leaves included.
    pub entered: usize,
}

type Failure = (usize, &'static str);

struct Walk<'t, S> {
    tree: &'t AttributedTree<S>,
    visited: Vec<Path>,
    entered: usize,
}

impl<'t, S: Symbol> Walk<'t, S> {
    fn new(tree: &'t AttributedTree<S>) -> Self {
        Walk { tree, visited: Vec::new(), entered: 0 }
    }

    fn enter(&mut self, id: usize) {
        self.entered += 1;
        let node = &self.tree.nodes[id];
        let iterating = match node.kind {
            Kind::Union | Kind::Concat | Kind::Shuffle => true,
            Kind::Counter => node.bounds.is_some_and(|(_, hi)| hi.at_least(2)),
            _ => false,
        };
        if iterating {
            self.visited.push(node.path.clone());
        }
    }

    fn finish(self, result: Result<(), Failure>) -> Verdict {
        let (locus, clause) = match result {
            Ok(()) => (None, None),
            Err((id, clause)) => (Some(self.tree.nodes[id].path.clone()), Some(clause)),
        };
        Verdict { deterministic: locus.is_none(), locus, violated_clause: clause, visited_nodes: self.visited, entered: self.entered }
    }
}

fn fail(id: usize, clause: &'static str) -> Result<(), Failure> {
    Err((id, clause))
}

/// Structural check with 𝒲 guarding iterated counters.
pub fn determ_w(e: &ExtExpr) -> Verdict {
    let tree = AttributedTree::new(e);
    determ_w_tree(&tree)
}

pub fn determ_w_tree(tree: &AttributedTree<crate::Letter>) -> Verdict {
    let mut walk = Walk::new(tree);
    let r = w_rec(&mut walk, 0);
    walk.finish(r)
}

fn w_rec<S: Symbol>(walk: &mut Walk<'_, S>, id: usize) -> Result<(), Failure> {
    walk.enter(id);
    let tree = walk.tree;
    let node = &tree.nodes[id];
    for &c in &node.children {
        w_rec(walk, c)?;
    }
    let attrs = |i: usize| &tree.nodes[node.children[i]].attrs;
    match node.kind {
        Kind::Union => {
            if !attrs(0).first.is_disjoint(&attrs(1).first) {
                return fail(id, "union/first");
            }
        }
        Kind::Concat => {
            let (a, b) = (attrs(0), attrs(1));
            if a.nullable && !a.first.is_disjoint(&b.first) {
                return fail(id, "concat/first-first");
            }
            if !a.followlast.is_disjoint(&b.first) {
                return fail(id, "concat/followlast-first");
            }
        }
        Kind::Shuffle => {
            if !attrs(0).sym.is_disjoint(&attrs(1).sym) {
                return fail(id, "shuffle/sym");
            }
        }
        Kind::Counter => {
            let hi = node.bounds.map_or(Upper::Fin(1), |b| b.1);
            if hi.at_least(2) && !attrs(0).w {
                return fail(id, "counter/w");
            }
        }
        _ => {}
    }
    Ok(())
}

/// The unmarked check driven by `ct`, with the pre-order trail of the nodes
/// it examined.
pub fn determ_unmarked(e: &ExtExpr) -> Verdict {
    let tree = AttributedTree::new(e);
    determ_unmarked_tree(&tree)
}

pub fn determ_unmarked_tree(tree: &AttributedTree<crate::Letter>) -> Verdict {
    let mut walk = Walk::new(tree);
    let r = unmarked_rec(&mut walk, 0);
    walk.finish(r)
}

fn unmarked_rec<S: Symbol>(walk: &mut Walk<'_, S>, id: usize) -> Result<(), Failure> {
    walk.enter(id);
    let tree = walk.tree;
    let node = &tree.nodes[id];
    for &c in &node.children {
        unmarked_rec(walk, c)?;
    }
    let attrs = |i: usize| &tree.nodes[node.children[i]].attrs;
    let ct = node.attrs.ct;
    match node.kind {
        Kind::Union => {
            let (a, b) = (attrs(0), attrs(1));
            if !a.first.is_disjoint(&b.first) {
                return fail(id, "union/first");
            }
            if ct && (!a.followlast.is_disjoint(&b.first) || !b.followlast.is_disjoint(&a.first)) {
                return fail(id, "union/ct-guard");
            }
        }
        Kind::Concat => {
            let (a, b) = (attrs(0), attrs(1));
            if !a.followlast.is_disjoint(&b.first) {
                return fail(id, "concat/followlast-first");
            }
            if a.nullable && !a.first.is_disjoint(&b.first) {
                return fail(id, "concat/nullable-first");
            }
            let clash = !a.first.is_disjoint(&b.first) && !a.nullable && b.nullable;
            if ct && (!b.followlast.is_disjoint(&a.first) || clash) {
                return fail(id, "concat/ct-guard");
            }
        }
        Kind::Shuffle if !attrs(0).sym.is_disjoint(&attrs(1).sym) => return fail(id, "shuffle/sym"),
        _ => {}
    }
    Ok(())
}

/// The marked structural check: set tests compare letters, and an iterated
/// counter fails when a followlast position and a different first position of
/// its body carry the same letter.
pub fn determ_marked(e: &ExtExpr) -> Verdict {
    let tree = AttributedTree::new(&mark(e));
    let mut walk = Walk::new(&tree);
    let r = marked_rec(&mut walk, 0);
    walk.finish(r)
}

fn marked_rec<S: Symbol>(walk: &mut Walk<'_, S>, id: usize) -> Result<(), Failure> {
    walk.enter(id);
    let tree = walk.tree;
    let node = &tree.nodes[id];
    for &c in &node.children {
        marked_rec(walk, c)?;
    }
    let attrs = |i: usize| &tree.nodes[node.children[i]].attrs;
    match node.kind {
        Kind::Union => {
            if !letters_disjoint(&attrs(0).first, &attrs(1).first) {
                return fail(id, "union/first");
            }
        }
        Kind::Concat => {
            let (a, b) = (attrs(0), attrs(1));
            if a.nullable && !letters_disjoint(&a.first, &b.first) {
                return fail(id, "concat/first-first");
            }
            if !letters_disjoint(&a.followlast, &b.first) {
                return fail(id, "concat/followlast-first");
            }
        }
        Kind::Shuffle => {
            if !letters_disjoint(&attrs(0).sym, &attrs(1).sym) {
                return fail(id, "shuffle/sym");
            }
        }
        Kind::Counter => {
            let hi = node.bounds.map_or(Upper::Fin(1), |b| b.1);
            let body = attrs(0);
            let clash = body
                .followlast
                .iter()
                .any(|x| body.first.iter().any(|y| x.letter() == y.letter() && x != y));
            if hi.at_least(2) && clash {
                return fail(id, "counter/marked-clash");
            }
        }
        _ => {}
    }
    Ok(())
}
