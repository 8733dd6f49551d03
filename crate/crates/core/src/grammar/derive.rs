use super::{base_keys, combine, Class, Key, Variant};
use crate::attrs::{AttrRecord, AttributedTree};
use crate::expr::{ExtExpr, Expr, Kind, Letter, Path, Upper};
use crate::symset::letter_mask;

/// The expression uses a construct the grammars have no production for.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FragmentError {
    #[error("counter [{lo},{hi}] at {path} is not ?, * or [m,n] with 0 < m < n < inf")]
    Counter { path: Path, lo: u32, hi: Upper },
    #[error("eps or empty at {0} below the root")]
    InnerConstant(Path),
}

/// The key of a node from its attributes. The second variant reads the
/// `ct` flag handed down to the node, which for atoms differs from their own
/// (always false) `ct`.
pub fn expr_key(rec: &AttrRecord<Letter>, variant: Variant) -> Key {
    let flag = match variant {
        Variant::G1 => rec.w,
        Variant::G2 => rec.ct_context,
    };
    Key::new(letter_mask(&rec.first), letter_mask(&rec.followlast), letter_mask(&rec.sym), rec.nullable, flag)
}

fn class_of(kind: Kind, bounds: Option<(u32, Upper)>) -> Option<Class> {
    Some(match (kind, bounds) {
        (Kind::Union, _) => Class::Union,
        (Kind::Concat, _) => Class::Concat,
        (Kind::Shuffle, _) => Class::Inter,
        (Kind::Counter, Some((0, Upper::Fin(1)))) => Class::Opt,
        (Kind::Counter, Some((0, Upper::Inf))) => Class::Star,
        (Kind::Counter, Some((lo, Upper::Fin(hi)))) if 0 < lo && lo < hi => Class::Count,
        _ => return None,
    })
}

/// Does some nonterminal of the grammar derive `e`? Every node's key is read
/// off its attributes and each parent must be a head that [`combine`] admits
/// for its children. `ε` and `∅` are derivable as the whole expression only.
pub fn derivable(e: &ExtExpr, variant: Variant) -> Result<bool, FragmentError> {
    if matches!(e, Expr::Epsilon | Expr::Empty) {
        return Ok(true);
    }
    for (path, node) in e.nodes() {
        match node {
            Expr::Epsilon | Expr::Empty => return Err(FragmentError::InnerConstant(path)),
            Expr::Counter(_, lo, hi) if class_of(Kind::Counter, Some((*lo, *hi))).is_none() => {
                return Err(FragmentError::Counter { path, lo: *lo, hi: *hi });
            }
            _ => {}
        }
    }
    let tree = AttributedTree::new(e);
    let k = e.symbols().iter().map(|l| l.index() + 1).max().unwrap_or(1);
    let bases: Vec<Key> = base_keys(k, variant).into_iter().map(|(key, _)| key).collect();
    for node in &tree.nodes {
        let key = expr_key(&node.attrs, variant);
        let ok = match node.kind {
            Kind::Sym => bases.contains(&key),
            kind => {
                let class = class_of(kind, node.bounds).expect("fragment checked");
                let left = expr_key(&tree.nodes[node.children[0]].attrs, variant);
                let right = node.children.get(1).map(|&c| expr_key(&tree.nodes[c].attrs, variant));
                combine(class, left, right, variant).contains(&key)
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
