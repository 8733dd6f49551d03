use std::collections::BTreeSet;

/// All interleavings of `u` and `v`.
pub fn shuffle_words<S: Copy + Ord>(u: &[S], v: &[S]) -> BTreeSet<Vec<S>> {
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    interleave(u, v, &mut buf, &mut out);
    out
}

fn interleave<S: Copy + Ord>(u: &[S], v: &[S], buf: &mut Vec<S>, out: &mut BTreeSet<Vec<S>>) {
    match (u.split_first(), v.split_first()) {
        (None, _) => {
            let mut w = buf.clone();
            w.extend_from_slice(v);
            out.insert(w);
        }
        (_, None) => {
            let mut w = buf.clone();
            w.extend_from_slice(u);
            out.insert(w);
        }
        (Some((a, u2)), Some((b, v2))) => {
            buf.push(*a);
            interleave(u2, v, buf, out);
            buf.pop();
            buf.push(*b);
            interleave(u, v2, buf, out);
            buf.pop();
        }
    }
}
