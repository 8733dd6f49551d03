use super::{Expr, Atom, Upper};

const KEYWORDS: [&str; 2] = ["empty", "eps"];

/// Renders with as few parentheses as re-parsing allows, except that compound
/// shuffle operands are always bracketed: `(ab)&(cd+e)`.
pub fn print<S: Atom>(e: &Expr<S>) -> String {
    match e {
        Expr::Epsilon => "eps".to_string(),
        Expr::Empty => "empty".to_string(),
        Expr::Sym(s) => s.to_string(),
        Expr::Union(l, r) => {
            let ls = wrap(l, matches!(**l, Expr::Shuffle(..)));
            let rs = wrap(r, matches!(**r, Expr::Union(..) | Expr::Shuffle(..)));
            format!("{ls}+{rs}")
        }
        Expr::Concat(l, r) => {
            let ls = wrap(l, matches!(**l, Expr::Union(..) | Expr::Shuffle(..)));
            let rs = wrap(r, matches!(**r, Expr::Union(..) | Expr::Shuffle(..) | Expr::Concat(..)));
            if needs_space(&ls, &rs) {
                format!("{ls} {rs}")
            } else {
                format!("{ls}{rs}")
            }
        }
        Expr::Shuffle(l, r) => {
            let ls = wrap(l, is_binary(l));
            let rs = wrap(r, is_binary(r));
            format!("{ls}&{rs}")
        }
        Expr::Counter(b, lo, hi) => {
            let bs = wrap(b, is_binary(b));
            match (lo, hi) {
                (0, Upper::Fin(1)) => format!("{bs}?"),
                (0, Upper::Inf) => format!("{bs}*"),
                _ => format!("{bs}[{lo},{hi}]"),
            }
        }
    }
}

fn is_binary<S>(e: &Expr<S>) -> bool {
    matches!(e, Expr::Union(..) | Expr::Concat(..) | Expr::Shuffle(..))
}

fn wrap<S: Atom>(e: &Expr<S>, parens: bool) -> String {
    if parens {
        format!("({})", print(e))
    } else {
        print(e)
    }
}

/// Juxtaposing two letter runs can spell a keyword across the seam
/// (`e` next to `ps`); a space keeps the tokens apart.
fn needs_space(left: &str, right: &str) -> bool {
    let (l, r) = (left.as_bytes(), right.as_bytes());
    let letter_seam = matches!((l.last(), r.first()), (Some(a), Some(b)) if a.is_ascii_lowercase() && b.is_ascii_lowercase());
    if !letter_seam {
        return false;
    }
    let joined = [l, r].concat();
    let from = l.len().saturating_sub(4);
    (from..l.len()).any(|start| {
        KEYWORDS
            .iter()
            .any(|kw| joined[start..].starts_with(kw.as_bytes()) && start + kw.len() > l.len())
    })
}
