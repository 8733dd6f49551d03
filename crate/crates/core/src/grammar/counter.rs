//! The counter sub-grammar `C → nAm, A → nAm | B, B → nB | n`, whose words
//! `n^n m^m` encode the bounds `[m,n]` with `0 < m < n`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterWord {
    pub word: String,
    /// Rules applied, leftmost derivation order.
    pub derivation: Vec<&'static str>,
}

impl fmt::Display for CounterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word)
    }
}

impl CounterWord {
    /// Derivation of the word for `[lo,hi]`; `None` outside `0 < lo < hi`.
    pub fn for_bounds(lo: u32, hi: u32) -> Option<CounterWord> {
        if lo == 0 || lo >= hi {
            return None;
        }
        let mut derivation = vec!["C -> nAm"];
        derivation.extend(std::iter::repeat_n("A -> nAm", lo as usize - 1));
        derivation.push("A -> B");
        derivation.extend(std::iter::repeat_n("B -> nB", (hi - lo - 1) as usize));
        derivation.push("B -> n");
        let word = "n".repeat(hi as usize) + &"m".repeat(lo as usize);
        Some(CounterWord { word, derivation })
    }

    pub fn bounds(&self) -> Option<(u32, u32)> {
        decode_counter(&self.word)
    }
}

/// Every word derivable from `C` with at most `budget` letters, shortest
/// first. Empty below the shortest word `nnm`.
pub fn counter_subgrammar_expand(budget: usize) -> Vec<CounterWord> {
    let mut out = Vec::new();
    for len in 3..=budget {
        for lo in 1..len {
            let hi = len - lo;
            if let Some(w) = CounterWord::for_bounds(lo as u32, hi as u32) {
                out.push(w);
            }
        }
    }
    out
}

/// Reads `[lo,hi]` back from a counter word: `hi` is the number of `n`s, `lo`
/// the number of `m`s. Rejects anything outside `n^n m^m` with `0 < m < n`.
pub fn decode_counter(word: &str) -> Option<(u32, u32)> {
    let hi = word.bytes().take_while(|&b| b == b'n').count();
    let rest = &word[hi..];
    if !rest.bytes().all(|b| b == b'm') {
        return None;
    }
    let lo = rest.len();
    (lo > 0 && lo < hi).then_some((lo as u32, hi as u32))
}
