use std::collections::BTreeSet;

use super::{shuffle_words, OracleError, Word};
use crate::expr::{Expr, Atom, Upper};

/// The words of `L(expr)` up to a length bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage<S: Atom> {
    pub expr: Expr<S>,
    pub max_len: usize,
    pub words: BTreeSet<Word<S>>,
    /// No word of the language is longer than `max_len`.
    pub complete: bool,
}

impl<S: Atom> BoundedLanguage<S> {
    pub fn contains(&self, w: &[S]) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Structural upper bound on word length; `None` when unbounded.
pub fn max_word_len<S>(e: &Expr<S>) -> Option<usize> {
    match e {
        Expr::Epsilon | Expr::Empty => Some(0),
        Expr::Sym(_) => Some(1),
        Expr::Union(l, r) => Some(max_word_len(l)?.max(max_word_len(r)?)),
        Expr::Concat(l, r) | Expr::Shuffle(l, r) => Some(max_word_len(l)? + max_word_len(r)?),
        Expr::Counter(b, _, hi) => match (max_word_len(b)?, hi) {
            (0, _) => Some(0),
            (_, Upper::Inf) => None,
            (n, Upper::Fin(k)) => n.checked_mul(*k as usize),
        },
    }
}

pub fn enumerate<S: Atom>(e: &Expr<S>, max_len: usize) -> Result<BoundedLanguage<S>, OracleError> {
    enumerate_capped(e, max_len, super::DEFAULT_WORD_CAP)
}

pub fn enumerate_capped<S: Atom>(e: &Expr<S>, max_len: usize, cap: usize) -> Result<BoundedLanguage<S>, OracleError> {
    let words = Enum { max_len, cap }.words(e)?;
    let complete = max_word_len(e).is_some_and(|n| n <= max_len);
    Ok(BoundedLanguage { expr: e.clone(), max_len, words, complete })
}

struct Enum {
    max_len: usize,
    cap: usize,
}

type Set<S> = BTreeSet<Word<S>>;

impl Enum {
    fn guard<S>(&self, s: &Set<S>) -> Result<(), OracleError> {
        if s.len() > self.cap {
            Err(OracleError::TooManyWords { cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn words<S: Atom>(&self, e: &Expr<S>) -> Result<Set<S>, OracleError> {
        let out = match e {
            Expr::Epsilon => BTreeSet::from([Vec::new()]),
            Expr::Empty => BTreeSet::new(),
            Expr::Sym(s) if self.max_len >= 1 => BTreeSet::from([vec![*s]]),
            Expr::Sym(_) => BTreeSet::new(),
            Expr::Union(l, r) => {
                let mut a = self.words(l)?;
                a.extend(self.words(r)?);
                a
            }
            Expr::Concat(l, r) => self.concat(&self.words(l)?, &self.words(r)?)?,
            Expr::Shuffle(l, r) => {
                let (a, b) = (self.words(l)?, self.words(r)?);
                let mut out = BTreeSet::new();
                for u in &a {
                    for v in b.iter().filter(|v| u.len() + v.len() <= self.max_len) {
                        out.extend(shuffle_words(u, v));
                        self.guard(&out)?;
                    }
                }
                out
            }
            Expr::Counter(body, lo, hi) => {
                let base = self.words(body)?;
                let mut out = BTreeSet::new();
                let mut power: Set<S> = BTreeSet::from([Vec::new()]);
                let mut i: u32 = 0;
                loop {
                    if i >= *lo {
                        let before = out.len();
                        out.extend(power.iter().cloned());
                        self.guard(&out)?;
                        let stalled = out.len() == before && i > *lo;
                        if stalled && *hi == Upper::Inf {
                            break;
                        }
                    }
                    if power.is_empty() || !hi.at_least(i + 1) {
                        break;
                    }
                    let next = self.concat(&power, &base)?;
                    if next == power && i >= *lo {
                        break;
                    }
                    power = next;
                    i += 1;
                }
                out
            }
        };
        self.guard(&out)?;
        Ok(out)
    }

    fn concat<S: Atom>(&self, a: &Set<S>, b: &Set<S>) -> Result<Set<S>, OracleError> {
        let mut out = BTreeSet::new();
        for u in a {
            for v in b.iter().filter(|v| u.len() + v.len() <= self.max_len) {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.insert(w);
            }
            self.guard(&out)?;
        }
        Ok(out)
    }
}
