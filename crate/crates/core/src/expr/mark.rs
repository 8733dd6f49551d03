use super::{ExtExpr, Letter, Marked, MarkedExpr, MAX_LETTERS};

/// Subscripts each letter occurrence, left to right, counting per letter from 1.
pub fn mark(e: &ExtExpr) -> MarkedExpr {
    let mut next = [0u32; MAX_LETTERS];
    e.map_symbols(&mut |l: Letter| {
        next[l.index()] += 1;
        Marked { letter: l, sub: next[l.index()] }
    })
}

pub fn unmark(m: &MarkedExpr) -> ExtExpr {
    m.map_symbols(&mut |s: Marked| s.letter)
}
