//! Finite-window recurrence diagnostics.
//!
//! Uniform recurrence and minimality are properties of infinite sequences; a
//! prefix can only show that every factor up to some length keeps coming back
//! within the window. Reports here say exactly that and nothing more.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{usage, Result};
use crate::repetitions::{runs, Power};
use crate::words::{factor_set, occurrences, window_ids, LanguageSet, OccurrenceList, Word, MAX_FACTOR_LENGTH};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GapOutcome {
    Gaps { gaps: Vec<usize>, max_gap: usize },
    InsufficientData { occurrences: usize },
}

/// Start-to-start distances between consecutive occurrences of `pattern`.
pub fn occurrence_gaps(text: &Word, pattern: &Word) -> Result<GapOutcome> {
    let occ = occurrences(text, pattern)?;
    if occ.positions.len() < 2 {
        return Ok(GapOutcome::InsufficientData { occurrences: occ.positions.len() });
    }
    let gaps: Vec<usize> = occ.positions.windows(2).map(|p| p[1] - p[0]).collect();
    let max_gap = *gaps.iter().max().expect("at least one gap");
    Ok(GapOutcome::Gaps { gaps, max_gap })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthRecurrence {
    pub length: usize,
    /// Distinct factors of this length in the window.
    pub factor_count: usize,
    /// Largest start-to-start gap between consecutive occurrences of any one
    /// factor; `None` when no factor occurs twice.
    pub worst_gap: Option<usize>,
    /// `worst_gap + length - 1`: every window of this many symbols contains
    /// every recurring factor of this length.
    pub n_bound: Option<usize>,
    /// Factors that occur once, or whose last occurrence is followed by a
    /// stretch longer than `worst_gap` before the window ends.
    #[serde(serialize_with = "serialize_words")]
    pub absent_later: Vec<Word>,
}

fn serialize_words<S: serde::Serializer>(words: &[Word], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(words.iter().map(|w| w.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub window_length: usize,
    pub max_len: usize,
    pub lengths: Vec<LengthRecurrence>,
    #[serde(serialize_with = "serialize_words")]
    pub factors_absent_later: Vec<Word>,
    pub diagnosis: String,
}

impl RecurrenceReport {
    /// True when every factor of every tested length recurs inside the window.
    pub fn recurrent_in_window(&self) -> bool {
        self.factors_absent_later.is_empty() && self.lengths.iter().all(|l| l.n_bound.is_some())
    }

    pub fn n_bound(&self, length: usize) -> Option<usize> {
        self.lengths.get(length.checked_sub(1)?).and_then(|l| l.n_bound)
    }

    pub fn worst_gap(&self, length: usize) -> Option<usize> {
        self.lengths.get(length.checked_sub(1)?).and_then(|l| l.worst_gap)
    }
}

fn recurrence_for_length(text: &Word, length: usize) -> LengthRecurrence {
    let windows = window_ids(text.symbols(), text.alphabet_size(), length);
    let count = windows.first.len();
    let mut last = vec![usize::MAX; count];
    let mut gap = vec![0usize; count];
    for (i, &id) in windows.ids.iter().enumerate() {
        let id = id as usize;
        if last[id] != usize::MAX {
            gap[id] = gap[id].max(i - last[id]);
        }
        last[id] = i;
    }
    let worst_gap = gap.iter().copied().max().filter(|&g| g > 0);
    // A virtual next occurrence just past the window.
    let horizon = windows.ids.len();
    let absent_later = (0..count)
        .filter(|&id| gap[id] == 0 || horizon - last[id] > worst_gap.unwrap_or(0))
        .map(|id| text.factor(windows.first[id]..windows.first[id] + length))
        .collect();
    LengthRecurrence {
        length,
        factor_count: count,
        worst_gap,
        n_bound: worst_gap.map(|g| g + length - 1),
        absent_later,
    }
}

/// Per-length worst recurrence gaps for factor lengths `1..=max_len`.
pub fn uniform_recurrence_bound(text: &Word, max_len: usize) -> Result<RecurrenceReport> {
    if max_len == 0 || 4 * max_len > text.len() {
        return usage(format!("max_len {max_len} must satisfy 1 <= max_len <= len/4 = {}", text.len() / 4));
    }
    if max_len > MAX_FACTOR_LENGTH {
        return usage(format!("max_len {max_len} exceeds cap {MAX_FACTOR_LENGTH}"));
    }
    let lengths: Vec<LengthRecurrence> =
        (1..=max_len).into_par_iter().map(|l| recurrence_for_length(text, l)).collect();
    let factors_absent_later: Vec<Word> = lengths.iter().flat_map(|l| l.absent_later.iter().cloned()).collect();
    let mut report = RecurrenceReport {
        window_length: text.len(),
        max_len,
        lengths,
        factors_absent_later,
        diagnosis: String::new(),
    };
    report.diagnosis = if report.recurrent_in_window() {
        format!("uniformly recurrent up to factor length {max_len} within window {}", text.len())
    } else {
        format!("recurrence not established up to factor length {max_len} within window {}", text.len())
    };
    Ok(report)
}

/// Whether every run of `k + 1` consecutive candidate start indices contains
/// a position. Candidate starts are `0..=text_length - |pattern|`.
pub fn relative_density_check(positions: &OccurrenceList, k: usize) -> Result<bool> {
    let Some((&first, _)) = positions.positions.split_first() else {
        return usage("position list is empty");
    };
    let last_start = positions.text_length - positions.pattern.len();
    if last_start < k {
        return Ok(true);
    }
    let last = *positions.positions.last().expect("nonempty");
    let gaps_ok = positions.positions.windows(2).all(|p| p[1] - p[0] <= k + 1);
    Ok(first <= k && gaps_ok && last_start - last <= k)
}

/// A power `root^e` with `e >= min_exponent` and `|root| <= max_root`, leftmost
/// then shortest.
pub fn periodicity_witness(text: &Word, max_root: usize, min_exponent: usize) -> Result<Option<Power>> {
    if min_exponent < 3 {
        return usage(format!("min_exponent {min_exponent} must be at least 3"));
    }
    if max_root == 0 {
        return usage("max_root must be at least 1");
    }
    Ok(runs(text).into_iter().find(|r| r.period <= max_root && r.exponent() >= min_exponent).map(|r| Power {
        root: text.factor(r.start..r.start + r.period),
        exponent: r.exponent(),
        start: r.start,
    }))
}

/// Length-`n` factors shared by two texts.
pub fn language_disjointness(a: &Word, b: &Word, n: usize) -> Result<LanguageSet> {
    if n == 0 || n > a.len().min(b.len()) {
        return usage(format!("depth {n} outside 1..={}", a.len().min(b.len())));
    }
    Ok(factor_set(a, n)?.intersection(&factor_set(b, n)?))
}

/// Smallest `n <= max_n` at which the two texts share no factor.
pub fn least_disjoint_depth(a: &Word, b: &Word, max_n: usize) -> Result<Option<usize>> {
    for n in 1..=max_n.min(a.len()).min(b.len()) {
        if language_disjointness(a, b, n)?.is_empty() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{method_a_prefix, DigitTriple, TernarySource};
    use crate::thue_morse::{seeded_flip_prefix, tm_prefix, FlipSeed};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn gaps() {
        match occurrence_gaps(&tm_prefix(64), &w("0")).unwrap() {
            GapOutcome::Gaps { max_gap, .. } => assert_eq!(max_gap, 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(occurrence_gaps(&w("0101"), &w("01")).unwrap(), GapOutcome::Gaps { gaps: vec![2], max_gap: 2 });
        assert_eq!(occurrence_gaps(&w("0111"), &w("0")).unwrap(), GapOutcome::InsufficientData { occurrences: 1 });
        let a = occurrence_gaps(&tm_prefix(1 << 16), &w("1001")).unwrap();
        let b = occurrence_gaps(&tm_prefix(1 << 16), &w("1001")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tm_recurrence() {
        let report = uniform_recurrence_bound(&tm_prefix(1 << 16), 12).unwrap();
        assert_eq!(report.n_bound(1), Some(3));
        assert!(report.factors_absent_later.is_empty());
        assert!(report.recurrent_in_window());
        for l in &report.lengths {
            assert!(l.n_bound.unwrap() >= l.length);
        }
        assert!(uniform_recurrence_bound(&tm_prefix(40), 11).is_err());
    }

    #[test]
    fn non_recurrent_factor_is_flagged() {
        let text = w("0001010101010101");
        let report = uniform_recurrence_bound(&text, 3).unwrap();
        assert!(report.factors_absent_later.contains(&w("00")));
        assert!(!report.recurrent_in_window());
    }

    #[test]
    fn density() {
        let m = tm_prefix(1 << 12);
        let zeros = occurrences(&m, &w("0")).unwrap();
        assert!(relative_density_check(&zeros, 2).unwrap());
        assert!(!relative_density_check(&zeros, 1).unwrap());
        let sparse = OccurrenceList { pattern: w("0"), text_length: 11, positions: vec![0, 10] };
        assert!(!relative_density_check(&sparse, 3).unwrap());
        let dense = OccurrenceList { pattern: w("0"), text_length: 11, positions: (0..11).collect() };
        assert!(relative_density_check(&dense, 0).unwrap());
        let empty = OccurrenceList { pattern: w("0"), text_length: 11, positions: vec![] };
        assert!(relative_density_check(&empty, 3).is_err());
    }

    #[test]
    fn periodicity() {
        assert!(periodicity_witness(&tm_prefix(1 << 14), 64, 3).unwrap().is_none());
        let p = periodicity_witness(&w("001001001"), 3, 3).unwrap().unwrap();
        assert_eq!((p.root.to_string().as_str(), p.exponent, p.start), ("001", 3, 0));
        assert!(periodicity_witness(&w("0011"), 3, 2).is_err());
    }

    #[test]
    fn disjointness() {
        let a = method_a_prefix(DigitTriple::new([1, 2, 3]).unwrap(), TernarySource::Theta, 10_000);
        let b = method_a_prefix(DigitTriple::new([4, 5, 6]).unwrap(), TernarySource::Theta, 10_000);
        assert!(language_disjointness(&a, &b, 8).unwrap().is_empty());
        let shared = language_disjointness(&a, &b, 3).unwrap();
        assert!(shared.contains_symbols(&[1, 0, 1]));
        assert_eq!(language_disjointness(&a, &a, 2).unwrap(), factor_set(&a, 2).unwrap());
        let depth = least_disjoint_depth(&a, &b, 16).unwrap().unwrap();
        assert!(depth <= 8);
        assert!(language_disjointness(&a, &b, 0).is_err());
    }

    #[test]
    fn seeded_points_recur() {
        for seed in ["0", "01", "110", "1001"] {
            let x = seeded_flip_prefix(&FlipSeed::new(w(seed)).unwrap(), 1 << 14);
            assert!(uniform_recurrence_bound(&x, 8).unwrap().recurrent_in_window(), "seed {seed}");
        }
    }
}
