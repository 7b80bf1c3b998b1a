//! Finite words over small integer alphabets, occurrence scanning and factor
//! censuses.
//!
//! Every higher-level module works on [`Word`] values. Symbols are `u8`; an
//! alphabet of size `a` uses the symbols `0..a`. Words over alphabets of size
//! at most ten render as one ASCII digit per symbol.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{usage, Error, Result};

pub type Symbol = u8;

/// Largest alphabet a [`Word`] can carry.
pub const MAX_ALPHABET: u16 = 256;

/// Upper bound on factor lengths for the per-length censuses.
pub const MAX_FACTOR_LENGTH: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet_size: u16,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: u16) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return usage(format!("alphabet size {alphabet_size} outside 1..=256"));
        }
        if let Some(pos) = symbols.iter().position(|&s| u16::from(s) >= alphabet_size) {
            return usage(format!("symbol {} at index {pos} is not below alphabet size {alphabet_size}", symbols[pos]));
        }
        Ok(Self { symbols, alphabet_size })
    }

    pub fn binary(symbols: Vec<Symbol>) -> Result<Self> {
        Self::new(symbols, 2)
    }

    /// Builds a word whose symbols the caller has already range-checked.
    pub(crate) fn from_trusted(symbols: Vec<Symbol>, alphabet_size: u16) -> Self {
        debug_assert!(symbols.iter().all(|&s| u16::from(s) < alphabet_size));
        Self { symbols, alphabet_size }
    }

    pub fn empty(alphabet_size: u16) -> Self {
        Self { symbols: Vec::new(), alphabet_size }
    }

    /// Parses one ASCII digit per symbol.
    pub fn from_ascii(text: &str, alphabet_size: u16) -> Result<Self> {
        let symbols = parse_digits(text)?;
        Self::new(symbols, alphabet_size)
    }

    /// Parses a JSON array of integers.
    pub fn from_json(text: &str, alphabet_size: u16) -> Result<Self> {
        let values: Vec<u64> =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("invalid JSON word: {e}")))?;
        let symbols = values
            .into_iter()
            .map(|v| Symbol::try_from(v).map_err(|_| Error::Usage(format!("symbol {v} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, alphabet_size)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn alphabet_size(&self) -> u16 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Copies `range` into a new word over the same alphabet.
    pub fn factor(&self, range: std::ops::Range<usize>) -> Word {
        Word::from_trusted(self.symbols[range].to_vec(), self.alphabet_size)
    }

    pub fn truncated(mut self, len: usize) -> Word {
        self.symbols.truncate(len);
        self
    }

    pub fn to_ascii(&self) -> Result<String> {
        if self.alphabet_size > 10 {
            return usage(format!("alphabet size {} cannot be rendered as ASCII digits", self.alphabet_size));
        }
        Ok(self.symbols.iter().map(|&s| char::from(b'0' + s)).collect())
    }

    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(2 * self.symbols.len() + 2);
        out.push('[');
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&s.to_string());
        }
        out.push(']');
        out
    }
}

impl AsRef<[Symbol]> for Word {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_ascii() {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str(&self.to_json()),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self}; a={})", self.alphabet_size)
    }
}

/// Parses an ASCII digit string; the alphabet is the smallest one of size at
/// least two that covers every digit.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = parse_digits(s)?;
        let alphabet = symbols.iter().map(|&s| u16::from(s) + 1).max().unwrap_or(2).max(2);
        Word::new(symbols, alphabet)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.symbols.len()))?;
        for s in &self.symbols {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

fn parse_digits(text: &str) -> Result<Vec<Symbol>> {
    text.bytes()
        .enumerate()
        .map(|(i, b)| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                usage(format!("non-digit character {:?} at index {i}", char::from(b)))
            }
        })
        .collect()
}

/// The set of distinct length-`word_length` factors of some text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageSet {
    word_length: usize,
    members: BTreeSet<Word>,
}

impl LanguageSet {
    pub fn new(word_length: usize, members: BTreeSet<Word>) -> Result<Self> {
        if let Some(w) = members.iter().find(|w| w.len() != word_length) {
            return usage(format!("member {w} does not have length {word_length}"));
        }
        Ok(Self { word_length, members })
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    pub fn members(&self) -> &BTreeSet<Word> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership by symbols only; alphabets of the two words may differ.
    pub fn contains_symbols(&self, symbols: &[Symbol]) -> bool {
        self.members.iter().any(|m| m.symbols() == symbols)
    }

    /// Members of `self` whose symbol strings also occur in `other`.
    pub fn intersection(&self, other: &LanguageSet) -> LanguageSet {
        let theirs: BTreeSet<&[Symbol]> = other.members.iter().map(Word::symbols).collect();
        let members = self.members.iter().filter(|w| theirs.contains(w.symbols())).cloned().collect();
        LanguageSet { word_length: self.word_length, members }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceList {
    pub pattern: Word,
    pub text_length: usize,
    pub positions: Vec<usize>,
}

/// Every start index of `pattern` in `text`, overlapping matches included.
pub fn occurrences(text: &Word, pattern: &Word) -> Result<OccurrenceList> {
    if pattern.is_empty() {
        return usage("pattern must be nonempty");
    }
    let positions = kmp_search(text.symbols(), pattern.symbols());
    Ok(OccurrenceList { pattern: pattern.clone(), text_length: text.len(), positions })
}

fn kmp_search(text: &[Symbol], pattern: &[Symbol]) -> Vec<usize> {
    let m = pattern.len();
    if m > text.len() {
        return Vec::new();
    }
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut out = Vec::new();
    let mut q = 0;
    for (i, &c) in text.iter().enumerate() {
        while q > 0 && c != pattern[q] {
            q = fail[q - 1];
        }
        if c == pattern[q] {
            q += 1;
        }
        if q == m {
            out.push(i + 1 - m);
            q = fail[q - 1];
        }
    }
    out
}

/// Dense identifiers for the length-`n` windows of a text.
///
/// `ids[i]` names the window starting at `i`; equal windows share an id and
/// `first[id]` is the first position where that window occurs. Ids are
/// assigned in order of first occurrence.
pub(crate) struct WindowIds {
    pub ids: Vec<u32>,
    pub first: Vec<usize>,
}

pub(crate) fn window_ids(text: &[Symbol], alphabet_size: u16, n: usize) -> WindowIds {
    assert!(n >= 1 && n <= text.len());
    let count = text.len() - n + 1;
    let mut ids = Vec::with_capacity(count);
    let mut first = Vec::new();
    let radix = u128::from(alphabet_size.max(2));
    match radix.checked_pow(n as u32) {
        // Windows pack injectively into a base-`radix` integer.
        Some(_) => {
            let top = radix.pow(n as u32 - 1);
            let mut key: u128 = text[..n].iter().fold(0, |k, &s| k * radix + u128::from(s));
            let mut map: HashMap<u128, u32> = HashMap::new();
            for i in 0..count {
                if i > 0 {
                    key = (key - u128::from(text[i - 1]) * top) * radix + u128::from(text[i + n - 1]);
                }
                let next = first.len() as u32;
                let id = *map.entry(key).or_insert_with(|| {
                    first.push(i);
                    next
                });
                ids.push(id);
            }
        }
        None => {
            let mut map: HashMap<&[Symbol], u32> = HashMap::new();
            for i in 0..count {
                let next = first.len() as u32;
                let id = *map.entry(&text[i..i + n]).or_insert_with(|| {
                    first.push(i);
                    next
                });
                ids.push(id);
            }
        }
    }
    WindowIds { ids, first }
}

/// All distinct length-`n` factors of `text`.
pub fn factor_set(text: &Word, n: usize) -> Result<LanguageSet> {
    if n == 0 || n > text.len() {
        return usage(format!("factor length {n} outside 1..={}", text.len()));
    }
    let windows = window_ids(text.symbols(), text.alphabet_size(), n);
    let members = windows.first.iter().map(|&p| text.factor(p..p + n)).collect();
    Ok(LanguageSet { word_length: n, members })
}

fn check_n_max(n_max: usize, limit: usize) -> Result<()> {
    if n_max == 0 || n_max > limit {
        return usage(format!("maximum factor length {n_max} outside 1..={limit}"));
    }
    if n_max > MAX_FACTOR_LENGTH {
        return usage(format!("maximum factor length {n_max} exceeds cap {MAX_FACTOR_LENGTH}"));
    }
    Ok(())
}

/// `p(n)` for `n = 1..=n_max`: the number of distinct length-`n` factors.
pub fn subword_complexity(text: &Word, n_max: usize) -> Result<Vec<usize>> {
    check_n_max(n_max, text.len())?;
    Ok((1..=n_max).map(|n| window_ids(text.symbols(), text.alphabet_size(), n).first.len()).collect())
}

/// Number of right-special length-`n` factors for `n = 1..=n_max`.
///
/// A factor is right-special when it is followed, somewhere inside `text`, by
/// at least two distinct symbols.
pub fn right_special_census(text: &Word, n_max: usize) -> Result<Vec<usize>> {
    if n_max + 1 > text.len() {
        return usage(format!("n_max + 1 = {} exceeds text length {}", n_max + 1, text.len()));
    }
    check_n_max(n_max, text.len())?;
    let s = text.symbols();
    Ok((1..=n_max)
        .map(|n| {
            // Windows with a successor only.
            let windows = window_ids(&s[..s.len() - 1], text.alphabet_size(), n);
            let mut follower: Vec<Option<Symbol>> = vec![None; windows.first.len()];
            let mut special = vec![false; windows.first.len()];
            for (i, &id) in windows.ids.iter().enumerate() {
                let next = s[i + n];
                let id = id as usize;
                match follower[id] {
                    None => follower[id] = Some(next),
                    Some(prev) if prev != next => special[id] = true,
                    Some(_) => {}
                }
            }
            special.iter().filter(|&&b| b).count()
        })
        .collect())
}

pub fn complement(w: &Word) -> Result<Word> {
    if w.alphabet_size() != 2 {
        return usage(format!("complement needs a binary word, got alphabet size {}", w.alphabet_size()));
    }
    Ok(Word::from_trusted(w.symbols().iter().map(|&s| 1 - s).collect(), 2))
}

/// Applies an injective symbol map pointwise.
///
/// The output alphabet is `1 + max(mapped value)`.
pub fn relabel(w: &Word, map: &[(Symbol, Symbol)]) -> Result<Word> {
    let mut table: [Option<Symbol>; 256] = [None; 256];
    let mut targets = BTreeSet::new();
    for &(from, to) in map {
        if table[from as usize].is_some() {
            return usage(format!("symbol {from} mapped twice"));
        }
        if !targets.insert(to) {
            return usage(format!("relabel map is not injective: {to} hit twice"));
        }
        table[from as usize] = Some(to);
    }
    let symbols = w
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, &s)| table[s as usize].ok_or_else(|| Error::Usage(format!("symbol {s} at index {i} is unmapped"))))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = targets.iter().next_back().map_or(1, |&m| u16::from(m) + 1);
    Ok(Word::from_trusted(symbols, alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn naive_positions(text: &[Symbol], pattern: &[Symbol]) -> Vec<usize> {
        if pattern.len() > text.len() {
            return vec![];
        }
        (0..=text.len() - pattern.len()).filter(|&i| &text[i..i + pattern.len()] == pattern).collect()
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&w("0110"), &w("1")).unwrap().positions, vec![1, 2]);
        assert_eq!(occurrences(&w("01010"), &w("010")).unwrap().positions, vec![0, 2]);
        let tm16 = w("0110100110010110");
        let expected = naive_positions(tm16.symbols(), &[1, 0, 0, 1]);
        assert_eq!(expected, vec![4, 8]);
        assert_eq!(occurrences(&tm16, &w("1001")).unwrap().positions, expected);
        assert!(matches!(occurrences(&tm16, &Word::empty(2)), Err(Error::Usage(_))));
    }

    #[test]
    fn factor_set_examples() {
        let f = factor_set(&w("0110"), 2).unwrap();
        let got: Vec<String> = f.members().iter().map(|m| m.to_string()).collect();
        assert_eq!(got, vec!["01", "10", "11"]);
        assert_eq!(factor_set(&w("0000"), 2).unwrap().len(), 1);
        assert!(factor_set(&w("01"), 3).is_err());
        assert!(factor_set(&w("01"), 0).is_err());
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(subword_complexity(&w("0101"), 2).unwrap(), vec![2, 2]);
        assert_eq!(subword_complexity(&w("0000"), 3).unwrap(), vec![1, 1, 1]);
        assert!(subword_complexity(&w("0000"), 5).is_err());
    }

    #[test]
    fn right_special_examples() {
        assert_eq!(right_special_census(&w("0101"), 1).unwrap(), vec![0]);
        assert_eq!(right_special_census(&w("00101"), 1).unwrap(), vec![1]);
        assert!(right_special_census(&w("0101"), 4).is_err());
    }

    #[test]
    fn complement_and_relabel() {
        assert_eq!(complement(&w("1001")).unwrap(), w("0110"));
        assert_eq!(complement(&Word::empty(2)).unwrap(), Word::empty(2));
        assert!(complement(&w("012")).is_err());
        let r = relabel(&w("012"), &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(r.to_string(), "123");
        assert_eq!(r.alphabet_size(), 4);
        assert_eq!(relabel(&w("0110"), &[(0, 0), (1, 1)]).unwrap(), w("0110"));
        assert!(relabel(&w("012"), &[(0, 1), (1, 2)]).is_err());
        assert!(relabel(&w("01"), &[(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn word_validation() {
        assert!(Word::new(vec![0, 2], 2).is_err());
        assert!(Word::new(vec![], 0).is_err());
        assert!("01a".parse::<Word>().is_err());
        assert!(Word::new(vec![11], 12).unwrap().to_ascii().is_err());
        assert_eq!(Word::new(vec![11, 0], 12).unwrap().to_string(), "[11,0]");
    }

    #[test]
    fn wide_alphabet_windows_fall_back_to_slices() {
        // 256^17 overflows u128, forcing the slice-keyed path.
        let symbols: Vec<Symbol> = (0..40u32).map(|i| ((i * 37) % 5) as Symbol).collect();
        let text = Word::new(symbols, 256).unwrap();
        let packed = Word::new(text.symbols().to_vec(), 5).unwrap();
        for n in [3, 17, 20] {
            let a: Vec<_> = factor_set(&text, n).unwrap().members().iter().map(|m| m.symbols().to_vec()).collect();
            let b: Vec<_> = factor_set(&packed, n).unwrap().members().iter().map(|m| m.symbols().to_vec()).collect();
            assert_eq!(a, b);
        }
    }

    fn binary_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 0..max).prop_map(|v| Word::binary(v).unwrap())
    }

    proptest! {
        #[test]
        fn occurrences_match_brute_force(text in binary_word(200), pat in prop::collection::vec(0u8..2, 1..6)) {
            let pattern = Word::binary(pat).unwrap();
            let got = occurrences(&text, &pattern).unwrap();
            prop_assert_eq!(got.positions, naive_positions(text.symbols(), pattern.symbols()));
        }

        #[test]
        fn factor_count_bounds(syms in prop::collection::vec(0u8..3, 1..120), n in 1usize..8) {
            let text = Word::new(syms, 3).unwrap();
            prop_assume!(n <= text.len());
            let f = factor_set(&text, n).unwrap();
            prop_assert!(f.len() <= (text.len() - n + 1).min(3usize.pow(n as u32)));
            let rs = right_special_census(&text, n.min(text.len() - 1).max(1));
            if let Ok(rs) = rs {
                let p = subword_complexity(&text, rs.len()).unwrap();
                for (r, c) in rs.iter().zip(&p) {
                    prop_assert!(r <= c);
                }
            }
        }

        #[test]
        fn serialization_round_trips(syms in prop::collection::vec(0u8..4, 0..64)) {
            let word = Word::new(syms, 4).unwrap();
            prop_assert_eq!(Word::from_ascii(&word.to_ascii().unwrap(), 4).unwrap(), word.clone());
            prop_assert_eq!(Word::from_json(&word.to_json(), 4).unwrap(), word.clone());
            prop_assert_eq!(serde_json::to_string(&word).unwrap(), word.to_json());
        }
    }
}
