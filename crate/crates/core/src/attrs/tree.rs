use std::collections::{BTreeSet, HashMap};

use super::{flexible_of, followlast_concat, followlast_shuffle, w_concat, w_union};
use crate::expr::{Expr, Kind, Path, Symbol, Upper};
use crate::symset::SymSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttrRecord<S> {
    pub sym: SymSet<S>,
    pub first: SymSet<S>,
    pub followlast: SymSet<S>,
    pub nullable: bool,
    pub w: bool,
    pub ct: bool,
    /// The flag handed down to this node by its parent. Equal to `ct` except
    /// at atoms, where `ct` is always false.
    pub ct_context: bool,
    /// Set on counters only.
    pub flexible: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct AttrNode<S> {
    pub path: Path,
    pub kind: Kind,
    pub bounds: Option<(u32, Upper)>,
    pub children: Vec<usize>,
    pub attrs: AttrRecord<S>,
}

/// An expression with an [`AttrRecord`] per node, in pre-order.
#[derive(Debug, Clone)]
pub struct AttributedTree<S> {
    pub expr: Expr<S>,
    pub nodes: Vec<AttrNode<S>>,
    /// Counters whose flexibility was undecided and assumed true.
    pub undecided: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl<S: Symbol> AttributedTree<S> {
    /// Runs both passes. `ct` is evaluated from a root called with `false`.
    pub fn new(e: &Expr<S>) -> AttributedTree<S> {
        let mut t = AttributedTree { expr: e.clone(), nodes: Vec::new(), undecided: Vec::new(), index: HashMap::new() };
        t.bottom_up(e, Path::root());
        t.index = t.nodes.iter().enumerate().map(|(i, n)| (n.path.clone(), i)).collect();
        mark_continuing(&mut t);
        t
    }

    fn bottom_up(&mut self, e: &Expr<S>, path: Path) -> usize {
        let id = self.nodes.len();
        let bounds = match e {
            Expr::Counter(_, lo, hi) => Some((*lo, *hi)),
            _ => None,
        };
        self.nodes.push(AttrNode { path: path.clone(), kind: e.kind(), bounds, children: Vec::new(), attrs: leaf_record(e) });
        let children: Vec<usize> = e
            .children()
            .into_iter()
            .enumerate()
            .map(|(i, c)| self.bottom_up(c, path.child(i as u8)))
            .collect();
        let rec = match e {
            Expr::Union(..) | Expr::Concat(..) | Expr::Shuffle(..) => {
                let (a, b) = (&self.nodes[children[0]].attrs, &self.nodes[children[1]].attrs);
                match e {
                    Expr::Union(..) => union(a, b),
                    Expr::Concat(..) => concat(a, b),
                    _ => shuffle(a, b),
                }
            }
            Expr::Counter(..) => {
                let flex = match flexible_of(e) {
                    Ok(f) => f,
                    Err(_) => {
                        self.undecided.push(path);
                        true
                    }
                };
                let lo = bounds.map_or(0, |b| b.0);
                counter(&self.nodes[children[0]].attrs, lo, flex)
            }
            _ => leaf_record(e),
        };
        self.nodes[id].attrs = rec;
        self.nodes[id].children = children;
        id
    }

    pub fn root(&self) -> &AttrRecord<S> {
        &self.nodes[0].attrs
    }

    pub fn get(&self, path: &Path) -> Option<&AttrRecord<S>> {
        self.index.get(path).map(|&i| &self.nodes[i].attrs)
    }

    pub fn node(&self, path: &Path) -> Option<&AttrNode<S>> {
        self.index.get(path).map(|&i| &self.nodes[i])
    }

    /// Flexible flag of the counter at `path`.
    pub fn flexible_at(&self, path: &Path) -> Option<bool> {
        self.get(path).and_then(|r| r.flexible)
    }
}

fn leaf_record<S: Symbol>(e: &Expr<S>) -> AttrRecord<S> {
    let set: SymSet<S> = match e {
        Expr::Sym(s) => BTreeSet::from([*s]),
        _ => BTreeSet::new(),
    };
    AttrRecord {
        sym: set.clone(),
        first: set,
        followlast: BTreeSet::new(),
        nullable: matches!(e, Expr::Epsilon),
        w: true,
        ct: false,
        ct_context: false,
        flexible: None,
    }
}

fn union<S: Symbol>(a: &AttrRecord<S>, b: &AttrRecord<S>) -> AttrRecord<S> {
    AttrRecord {
        sym: &a.sym | &b.sym,
        first: &a.first | &b.first,
        followlast: &a.followlast | &b.followlast,
        nullable: a.nullable || b.nullable,
        w: w_union((a.w, &a.first, &a.followlast), (b.w, &b.first, &b.followlast)),
        ct: false,
        ct_context: false,
        flexible: None,
    }
}

fn concat<S: Symbol>(a: &AttrRecord<S>, b: &AttrRecord<S>) -> AttrRecord<S> {
    AttrRecord {
        sym: &a.sym | &b.sym,
        first: if a.nullable { &a.first | &b.first } else { a.first.clone() },
        followlast: followlast_concat(&a.followlast, &b.first, &b.followlast, b.nullable),
        nullable: a.nullable && b.nullable,
        w: w_concat((a.w, &a.first, &a.followlast, a.nullable), (b.w, &b.first, &b.followlast, b.nullable)),
        ct: false,
        ct_context: false,
        flexible: None,
    }
}

fn shuffle<S: Symbol>(a: &AttrRecord<S>, b: &AttrRecord<S>) -> AttrRecord<S> {
    AttrRecord {
        sym: &a.sym | &b.sym,
        first: &a.first | &b.first,
        followlast: followlast_shuffle((&a.first, &a.followlast, a.nullable), (&b.first, &b.followlast, b.nullable)),
        nullable: a.nullable && b.nullable,
        w: a.w && b.w,
        ct: false,
        ct_context: false,
        flexible: None,
    }
}

fn counter<S: Symbol>(body: &AttrRecord<S>, lo: u32, flexible: bool) -> AttrRecord<S> {
    AttrRecord {
        sym: body.sym.clone(),
        first: body.first.clone(),
        followlast: if flexible { &body.followlast | &body.first } else { body.followlast.clone() },
        nullable: lo == 0 || body.nullable,
        w: body.w,
        ct: false,
        ct_context: false,
        flexible: Some(flexible),
    }
}

/// The top-down `ct` pass, started with `false` at the root. Fills `ct` and
/// `ct_context` of every node.
pub fn mark_continuing<S: Symbol>(t: &mut AttributedTree<S>) {
    let mut stack = vec![(0usize, false)];
    while let Some((id, n)) = stack.pop() {
        let node = &mut t.nodes[id];
        node.attrs.ct_context = n;
        node.attrs.ct = match node.kind {
            Kind::Sym | Kind::Epsilon | Kind::Empty => false,
            _ => n,
        };
        let children = node.children.clone();
        match node.kind {
            Kind::Union | Kind::Shuffle => {
                stack.push((children[0], n));
                stack.push((children[1], n));
            }
            Kind::Concat if n => {
                let (l, r) = (children[0], children[1]);
                let (nl, nr) = (t.nodes[l].attrs.nullable, t.nodes[r].attrs.nullable);
                stack.push((l, nr));
                stack.push((r, nl));
            }
            Kind::Concat => {
                stack.push((children[0], false));
                stack.push((children[1], false));
            }
            Kind::Counter => {
                let hi = node.bounds.map(|b| b.1).unwrap_or(Upper::Fin(1));
                stack.push((children[0], if hi.at_least(2) { true } else { n }));
            }
            _ => {}
        }
    }
}
