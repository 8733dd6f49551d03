use super::enumerate::enumerate_capped;
use super::flexible::{delimit, Tagged};
use super::nfa::{Nfa, DEFAULT_STATE_CAP};
use super::{Answer, OracleBounds, OracleError};
use crate::expr::{Atom, Expr, Path};

/// Most words of `L(F)` paired up against each other.
const SAMPLE: usize = 48;

/// Can two words of the subexpression at `path` be matched back to back?
///
/// With `#` wrapped around the subexpression, every pair `w1, w2` of its
/// words (shortest first, up to the bounds) must make `#w1##w2#` a factor of
/// a word of the delimited expression. A failing pair is a conclusive
/// `false`; otherwise the answer holds for the sampled words.
pub fn continuing_oracle<S: Atom>(e: &Expr<S>, path: &Path, bounds: OracleBounds) -> Result<Answer, OracleError> {
    let f = e.at(path).ok_or_else(|| OracleError::BadPath(path.to_string()))?;
    let tagged = delimit(e, path)?;
    let nfa = Nfa::build(&tagged, DEFAULT_STATE_CAP)?;
    let lang = match enumerate_capped(f, bounds.max_len, bounds.max_words) {
        Ok(l) => l,
        Err(OracleError::TooManyWords { .. }) => return Ok(Answer::Inconclusive),
        Err(err) => return Err(err),
    };
    let mut words: Vec<&Vec<S>> = lang.words.iter().collect();
    words.sort_by_key(|w| w.len());
    words.truncate(SAMPLE);
    if words.is_empty() {
        return Ok(Answer::Inconclusive);
    }
    for w1 in &words {
        for w2 in &words {
            let mut probe = vec![Tagged::Delim];
            probe.extend(w1.iter().map(|&s| Tagged::Sym(s)));
            probe.extend([Tagged::Delim, Tagged::Delim]);
            probe.extend(w2.iter().map(|&s| Tagged::Sym(s)));
            probe.push(Tagged::Delim);
            if !nfa.has_factor(&probe) {
                return Ok(Answer::False);
            }
        }
    }
    Ok(Answer::True)
}
