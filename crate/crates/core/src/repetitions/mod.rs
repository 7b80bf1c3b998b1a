//! Squares, cubes and overlaps.
//!
//! The fast path computes every *run* (maximal repetition with exponent at
//! least two, reported with its smallest period) from the Main-Lorentz square
//! families. All verdicts and witnesses derive from the runs:
//!
//! * a text is square-free iff it has no run;
//! * it contains a cube iff some run has length `>= 3p`;
//! * it contains an overlap `BBb` iff some run has length `>= 2p + 1`.
//!
//! [`find_square_naive`] is the exhaustive reference implementation.

mod main_lorentz;
mod naive;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{usage, Result};
use crate::thue_morse::{partition_block, tm_prefix, BlockKind};
use crate::words::{window_ids, Word, MAX_FACTOR_LENGTH};

pub use naive::find_square_naive;

/// A maximal repetition `text[start..end]` with smallest period `period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// Integer exponent `floor(len / period)`.
    pub fn exponent(&self) -> usize {
        self.len() / self.period
    }

    pub fn has_overlap(&self) -> bool {
        self.len() > 2 * self.period
    }

    pub fn has_cube(&self) -> bool {
        self.len() >= 3 * self.period
    }

    pub fn witness(&self, text: &Word) -> SquareWitness {
        let exponent = self.exponent();
        SquareWitness {
            start: self.start,
            root: text.factor(self.start..self.start + self.period),
            exponent,
            overlap_extra: self.len() > exponent * self.period,
        }
    }
}

/// All runs of `text`, ordered by start then period.
pub fn runs(text: &Word) -> Vec<Run> {
    let mut families = main_lorentz::square_families(text.symbols());
    families.sort_unstable();
    let mut stretches: Vec<Run> = Vec::new();
    let mut iter = families.into_iter();
    if let Some(first) = iter.next() {
        let mut cur = first;
        for f in iter {
            if f.period == cur.period && f.lo <= cur.hi + 1 {
                cur.hi = cur.hi.max(f.hi);
            } else {
                stretches.push(Run { start: cur.lo, end: cur.hi + 2 * cur.period, period: cur.period });
                cur = f;
            }
        }
        stretches.push(Run { start: cur.lo, end: cur.hi + 2 * cur.period, period: cur.period });
    }
    // A stretch whose period is a proper multiple of the smallest one spans
    // exactly the same interval as the run of the smallest period.
    stretches.sort_unstable_by_key(|r| (r.start, r.end, r.period));
    stretches.dedup_by_key(|r| (r.start, r.end));
    stretches.sort_unstable();
    stretches
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub start: usize,
    #[serde(serialize_with = "serialize_ascii")]
    pub root: Word,
    pub exponent: usize,
    /// The repetition is followed by the root's first symbol (`BBb`).
    pub overlap_extra: bool,
}

pub(crate) fn serialize_ascii<S: serde::Serializer>(word: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitionReport {
    pub text_length: usize,
    /// One witness per run, in canonical order.
    pub squares: Vec<SquareWitness>,
    pub square_free: bool,
    pub cube_free: bool,
    pub overlap_free: bool,
    /// Number of witnesses per root length.
    pub census: BTreeMap<usize, usize>,
}

pub fn find_squares_all(text: &Word) -> RepetitionReport {
    let runs = runs(text);
    let mut census = BTreeMap::new();
    for r in &runs {
        *census.entry(r.period).or_insert(0) += 1;
    }
    RepetitionReport {
        text_length: text.len(),
        square_free: runs.is_empty(),
        cube_free: !runs.iter().any(Run::has_cube),
        overlap_free: !runs.iter().any(Run::has_overlap),
        squares: runs.iter().map(|r| r.witness(text)).collect(),
        census,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<SquareWitness>,
}

fn verdict(text: &Word, bad: impl Fn(&Run) -> bool) -> Verdict {
    let witness = runs(text).into_iter().find(|r| bad(r)).map(|r| r.witness(text));
    Verdict { holds: witness.is_none(), witness }
}

pub fn is_square_free(text: &Word) -> Verdict {
    verdict(text, |_| true)
}

pub fn is_cube_free(text: &Word) -> Verdict {
    verdict(text, Run::has_cube)
}

pub fn is_overlap_free(text: &Word) -> Verdict {
    verdict(text, Run::has_overlap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Power {
    #[serde(serialize_with = "serialize_ascii")]
    pub root: Word,
    pub exponent: usize,
    pub start: usize,
}

/// The highest integer power with root length at most `max_root`; leftmost,
/// then shortest root, on ties. A nonempty square-free text yields its first
/// symbol with exponent 1.
pub fn max_power(text: &Word, max_root: usize) -> Result<Option<Power>> {
    if max_root == 0 {
        return usage("max_root must be at least 1");
    }
    if text.is_empty() {
        return Ok(None);
    }
    let mut best = Power { root: text.factor(0..1), exponent: 1, start: 0 };
    for r in runs(text).into_iter().filter(|r| r.period <= max_root) {
        if r.exponent() > best.exponent {
            best = Power { root: text.factor(r.start..r.start + r.period), exponent: r.exponent(), start: r.start };
        }
    }
    Ok(Some(best))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "class", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SquareClass {
    /// Root of length `2^k` equal symbol-by-symbol to `x_k` or `y_k`.
    PartitionSimilar {
        k: u32,
        block: BlockKind,
    },
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedSquare {
    pub start: usize,
    pub root_length: usize,
    #[serde(serialize_with = "serialize_ascii")]
    pub root: Word,
    pub exponent: usize,
    #[serde(flatten)]
    pub class: SquareClass,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub partition_similar: usize,
    pub other: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCensus {
    pub prefix_length: usize,
    pub squares: Vec<ClassifiedSquare>,
    pub by_root_length: BTreeMap<usize, ClassCounts>,
    pub partition_similar: usize,
    pub other: usize,
    /// Squares with a power-of-two root length that are not partition-similar.
    pub power_of_two_other: usize,
}

/// Classifies every square of the Thue-Morse prefix of length `prefix_len`.
///
/// This reports; it does not assume that every root is a partition block.
pub fn classify_tm_squares(prefix_len: usize) -> Result<SquareCensus> {
    if prefix_len < 4 {
        return usage(format!("prefix length {prefix_len} must be at least 4"));
    }
    let text = tm_prefix(prefix_len);
    let mut census = SquareCensus {
        prefix_length: prefix_len,
        squares: Vec::new(),
        by_root_length: BTreeMap::new(),
        partition_similar: 0,
        other: 0,
        power_of_two_other: 0,
    };
    for run in runs(&text) {
        let root = text.factor(run.start..run.start + run.period);
        let class = classify_root(&root);
        let counts = census.by_root_length.entry(run.period).or_default();
        match class {
            SquareClass::PartitionSimilar { .. } => {
                counts.partition_similar += 1;
                census.partition_similar += 1;
            }
            SquareClass::Other => {
                counts.other += 1;
                census.other += 1;
                if run.period.is_power_of_two() {
                    census.power_of_two_other += 1;
                }
            }
        }
        census.squares.push(ClassifiedSquare {
            start: run.start,
            root_length: run.period,
            root,
            exponent: run.exponent(),
            class,
        });
    }
    Ok(census)
}

fn classify_root(root: &Word) -> SquareClass {
    if !root.len().is_power_of_two() {
        return SquareClass::Other;
    }
    let k = root.len().trailing_zeros();
    for block in [BlockKind::X, BlockKind::Y] {
        if partition_block(k, block) == *root {
            return SquareClass::PartitionSimilar { k, block };
        }
    }
    SquareClass::Other
}

/// Two occurrences of the same factor closer than its length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapViolation {
    #[serde(serialize_with = "serialize_ascii")]
    pub factor: Word,
    pub first: usize,
    pub second: usize,
}

/// For factor lengths `1..=max_len`, every pair of consecutive occurrences of
/// one factor whose distance is below the factor length.
pub fn check_no_overlapping_occurrences(text: &Word, max_len: usize) -> Result<Vec<OverlapViolation>> {
    if max_len == 0 || max_len > text.len() || max_len > MAX_FACTOR_LENGTH {
        return usage(format!("max_len {max_len} outside 1..={}", text.len().min(MAX_FACTOR_LENGTH)));
    }
    let mut out = Vec::new();
    for len in 1..=max_len {
        let windows = window_ids(text.symbols(), text.alphabet_size(), len);
        let mut last = vec![usize::MAX; windows.first.len()];
        for (i, &id) in windows.ids.iter().enumerate() {
            let prev = last[id as usize];
            if prev != usize::MAX && i - prev < len {
                out.push(OverlapViolation { factor: text.factor(i..i + len), first: prev, second: i });
            }
            last[id as usize] = i;
        }
    }
    Ok(out)
}
