use std::fmt;

use super::enumerate::enumerate_capped;
use super::nfa::{Nfa, DEFAULT_STATE_CAP};
use super::{membership, Answer, OracleBounds, OracleError};
use crate::expr::{Atom, Expr, Path, Upper};

/// Which word decomposition the flexible search looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlexReading {
    /// Only the counter subexpression itself: some nonempty `w ∈ L(F)` is
    /// also in `L(G)^k` for some `k < n`.
    #[default]
    Intrinsic,
    /// Runs of consecutive `F` blocks inside words of the whole expression,
    /// located with a fresh delimiter around `F`: the run `w ∈ L(F)^l` must
    /// also split as `L(F)^l' L(G)^k` with `l' < l` and `k < n`.
    InContext,
}

/// A leaf of the expression with `F` replaced by `#F#`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum Tagged<S> {
    Sym(S),
    Delim,
}

impl<S: fmt::Display> fmt::Display for Tagged<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tagged::Sym(s) => s.fmt(f),
            Tagged::Delim => f.write_str("#"),
        }
    }
}

/// `e` with the node at `path` wrapped in delimiters.
pub(crate) fn delimit<S: Atom>(e: &Expr<S>, path: &Path) -> Result<Expr<Tagged<S>>, OracleError> {
    let sub = e.at(path).ok_or_else(|| OracleError::BadPath(path.to_string()))?;
    let d = Expr::Sym(Tagged::Delim);
    let wrapped = Expr::concat(Expr::concat(d.clone(), sub.map_symbols(&mut Tagged::Sym)), d);
    e.map_symbols(&mut Tagged::Sym).replace_at(path, wrapped).ok_or_else(|| OracleError::BadPath(path.to_string()))
}

fn counter_parts<S: Atom>(f: &Expr<S>) -> Result<(&Expr<S>, u32, Upper), OracleError> {
    match f {
        Expr::Counter(g, lo, hi) if hi.at_least(2) => Ok((g, *lo, *hi)),
        _ => Err(OracleError::Precondition("flexible needs a counter with upper bound at least 2")),
    }
}

pub fn flexible_oracle<S: Atom>(e: &Expr<S>, path: &Path, bounds: OracleBounds, reading: FlexReading) -> Result<Answer, OracleError> {
    let f = e.at(path).ok_or_else(|| OracleError::BadPath(path.to_string()))?;
    let (g, _, hi) = counter_parts(f)?;
    let shorter = Expr::Counter(Box::new(g.clone()), 0, hi.minus_one());
    match reading {
        FlexReading::Intrinsic => {
            let lang = match enumerate_capped(f, bounds.max_len, bounds.max_words) {
                Ok(l) => l,
                Err(OracleError::TooManyWords { .. }) => return Ok(Answer::Inconclusive),
                Err(err) => return Err(err),
            };
            if lang.words.iter().any(|w| !w.is_empty() && membership(&shorter, w)) {
                return Ok(Answer::True);
            }
            Ok(if lang.complete { Answer::False } else { Answer::Inconclusive })
        }
        FlexReading::InContext => in_context(e, path, f, &shorter, bounds),
    }
}

fn in_context<S: Atom>(e: &Expr<S>, path: &Path, f: &Expr<S>, shorter: &Expr<S>, bounds: OracleBounds) -> Result<Answer, OracleError> {
    let tagged = delimit(e, path)?;
    let max_len = bounds.max_len * 3 + 2;
    let lang = match enumerate_capped(&tagged, max_len, bounds.max_words) {
        Ok(l) => l,
        Err(OracleError::TooManyWords { .. }) => return Ok(Answer::Inconclusive),
        Err(err) => return Err(err),
    };
    for word in &lang.words {
        for run in block_runs(word) {
            for i in 0..run.len() {
                let mut w = Vec::new();
                for (j, block) in run[i..].iter().enumerate() {
                    w.extend_from_slice(block);
                    let l = j as u32 + 1;
                    if w.is_empty() {
                        continue;
                    }
                    let split = match l {
                        1 => shorter.clone(),
                        _ => Expr::concat(Expr::Counter(Box::new(f.clone()), 0, Upper::Fin(l - 1)), shorter.clone()),
                    };
                    if membership(&split, &w) {
                        return Ok(Answer::True);
                    }
                }
            }
        }
    }
    Ok(if lang.complete { Answer::False } else { Answer::Inconclusive })
}

/// Maximal runs of adjacent `#w#` blocks in a delimited word.
fn block_runs<S: Atom>(word: &[Tagged<S>]) -> Vec<Vec<Vec<S>>> {
    let mut runs = Vec::new();
    let mut run: Vec<Vec<S>> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        if word[i] != Tagged::Delim {
            if !run.is_empty() {
                runs.push(std::mem::take(&mut run));
            }
            i += 1;
            continue;
        }
        let mut block = Vec::new();
        let mut j = i + 1;
        while let Some(Tagged::Sym(s)) = word.get(j) {
            block.push(*s);
            j += 1;
        }
        run.push(block);
        i = j + 1;
    }
    if !run.is_empty() {
        runs.push(run);
    }
    runs
}

/// Exact intrinsic reading: `L(F) ∩ L(G[0,n-1])` has a nonempty word.
pub fn flexible_exact<S: Atom>(f: &Expr<S>) -> Result<bool, OracleError> {
    let (g, _, hi) = counter_parts(f)?;
    let shorter = Expr::Counter(Box::new(g.clone()), 0, hi.minus_one());
    let a = Nfa::build(f, DEFAULT_STATE_CAP)?;
    let b = Nfa::build(&shorter, DEFAULT_STATE_CAP)?;
    a.intersects_nonempty(&b, DEFAULT_STATE_CAP * 4)
}
