//! Ternary square-free sequences read off the Thue-Morse sequence, and the
//! unary run-length encoding that turns a three-letter square-free sequence
//! into a binary point.
//!
//! * `theta`: each Thue-Morse term equal to its predecessor becomes 2.
//! * `vartheta`: each term equal to its successor becomes 2.
//! * `v`: the number of ones between consecutive zeros.
//! * `w`: `vartheta` under `0 -> 2, 1 -> 0, 2 -> 1`; equal to `v`.
//! * `beta`: `theta` under `0 -> 1, 1 -> 2, 2 -> 3`.

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::repetitions::is_square_free;
use crate::thue_morse::{tm_prefix, tm_term};
use crate::words::{relabel, Symbol, Word};

pub fn theta_prefix(n: usize) -> Word {
    let m = tm_prefix(n);
    let s = m.symbols();
    let out = (0..n).map(|i| if i > 0 && s[i - 1] == s[i] { 2 } else { s[i] }).collect();
    Word::from_trusted(out, 3)
}

pub fn vartheta_prefix(n: usize) -> Word {
    let m = tm_prefix(n + 1);
    let s = m.symbols();
    let out = (0..n).map(|i| if s[i] == s[i + 1] { 2 } else { s[i] }).collect();
    Word::from_trusted(out, 3)
}

/// Term `j` counts the ones strictly between the `j`-th and `(j+1)`-th zero
/// of the Thue-Morse sequence (zeros counted from 0).
pub fn v_prefix(n: usize) -> Word {
    let mut out = Vec::with_capacity(n);
    let mut ones: Symbol = 0;
    // Term 0 is the first zero.
    let mut index = 1u64;
    while out.len() < n {
        if tm_term(index) == 0 {
            out.push(ones);
            ones = 0;
        } else {
            ones += 1;
        }
        index += 1;
    }
    Word::from_trusted(out, 3)
}

pub fn w_prefix(n: usize) -> Word {
    relabel(&vartheta_prefix(n), &[(0, 2), (1, 0), (2, 1)]).expect("total bijection on {0,1,2}")
}

/// `theta` over the letters 1, 2, 3 (alphabet size 4, symbol 0 unused).
pub fn beta_prefix(n: usize) -> Word {
    relabel(&theta_prefix(n), &[(0, 1), (1, 2), (2, 3)]).expect("total bijection on {0,1,2}")
}

/// Three distinct positive run lengths, stored ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DigitTriple([u8; 3]);

impl DigitTriple {
    pub fn new(digits: [u8; 3]) -> Result<Self> {
        let mut sorted = digits;
        sorted.sort_unstable();
        if sorted[0] == 0 || sorted[0] == sorted[1] || sorted[1] == sorted[2] {
            return usage(format!("digit triple {digits:?} must be three distinct positive integers"));
        }
        if sorted[2] == u8::MAX {
            return usage("digits must stay below 255");
        }
        Ok(Self(sorted))
    }

    pub fn digits(&self) -> [u8; 3] {
        self.0
    }
}

/// Which ternary square-free sequence drives an encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TernarySource {
    #[default]
    Theta,
    Vartheta,
}

impl TernarySource {
    pub fn prefix(self, n: usize) -> Word {
        match self {
            TernarySource::Theta => theta_prefix(n),
            TernarySource::Vartheta => vartheta_prefix(n),
        }
    }
}

/// `1^{g_0} 0 1^{g_1} 0 1^{g_2} ...` truncated to `count` symbols.
///
/// `digits` must use positive values, at most three distinct ones, and be
/// square-free.
pub fn method_a_encode(digits: &Word, count: usize) -> Result<Word> {
    let s = digits.symbols();
    if let Some(i) = s.iter().position(|&d| d == 0) {
        return usage(format!("digit at index {i} is zero; run lengths must be positive"));
    }
    let mut distinct: Vec<Symbol> = s.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() > 3 {
        return usage(format!("digits use {} distinct values; at most three allowed", distinct.len()));
    }
    if let Some(w) = is_square_free(digits).witness {
        return Err(Error::SquareInDigits { start: w.start, root: w.root.to_string() });
    }
    let mut out = Vec::with_capacity(count);
    for (i, &d) in s.iter().enumerate() {
        if out.len() >= count {
            break;
        }
        if i > 0 {
            out.push(0);
        }
        out.extend(std::iter::repeat_n(1, d as usize));
    }
    if out.len() < count {
        return usage(format!("{} digits encode only {} symbols; {count} requested", s.len(), out.len()));
    }
    out.truncate(count);
    Ok(Word::from_trusted(out, 2))
}

/// Method A point for `triple`: the ternary source relabelled onto the
/// triple and run-length encoded.
pub fn method_a_prefix(triple: DigitTriple, source: TernarySource, count: usize) -> Word {
    let [a, b, c] = triple.digits();
    // Each digit contributes at least `a + 1` symbols.
    let digits_needed = count / (a as usize + 1) + 1;
    let ternary = source.prefix(digits_needed);
    let digits = relabel(&ternary, &[(0, a), (1, b), (2, c)]).expect("triple is injective");
    method_a_encode(&digits, count).expect("relabelled square-free digits encode")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunLengthProfile {
    pub runs: Vec<(Symbol, usize)>,
}

impl RunLengthProfile {
    /// Lengths of the 1-runs that are not at either end of the word.
    pub fn interior_one_runs(&self) -> Vec<usize> {
        let n = self.runs.len();
        self.runs
            .iter()
            .enumerate()
            .filter(|&(i, &(s, _))| s == 1 && i > 0 && i + 1 < n)
            .map(|(_, &(_, len))| len)
            .collect()
    }

    /// Lengths of all runs of `symbol`.
    pub fn lengths_of(&self, symbol: Symbol) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().filter(move |r| r.0 == symbol).map(|r| r.1)
    }
}

pub fn run_length_profile(w: &Word) -> RunLengthProfile {
    let mut runs: Vec<(Symbol, usize)> = Vec::new();
    for &s in w.symbols() {
        match runs.last_mut() {
            Some((sym, len)) if *sym == s => *len += 1,
            _ => runs.push((s, 1)),
        }
    }
    RunLengthProfile { runs }
}
