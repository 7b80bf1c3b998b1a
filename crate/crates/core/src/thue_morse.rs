//! Thue-Morse prefixes from four independent generators, the aligned
//! partition-block structure, look-alike block auditing and the seeded
//! flipping construction.
//!
//! The partition blocks of length `2^k` are `x_k` (starting with 0) and
//! `y_k = complement(x_k)`, with `x_0 = 0` and `x_{k+1} = x_k y_k`. Every
//! `2^k`-aligned block of the sequence is one of the two.

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::words::{Symbol, Word};

/// Term `n`: parity of the number of ones in the binary expansion of `n`.
pub fn tm_term(n: u64) -> Symbol {
    (n.count_ones() & 1) as Symbol
}

/// Prefix by iterating the substitution `0 -> 01`, `1 -> 10` from `0`.
pub fn tm_prefix_morphism(n: usize) -> Word {
    let mut word: Vec<Symbol> = vec![0];
    while word.len() < n {
        word = word.iter().flat_map(|&s| [s, 1 - s]).collect();
    }
    word.truncate(n);
    Word::from_trusted(word, 2)
}

/// Prefix from `M_0 = 0`, `M_2i = M_i`, `M_2i+1 = 1 - M_i`.
pub fn tm_prefix_recursive(n: usize) -> Word {
    let mut word: Vec<Symbol> = Vec::with_capacity(n);
    for i in 0..n {
        let term = match i {
            0 => 0,
            _ if i % 2 == 0 => word[i / 2],
            _ => 1 - word[i / 2],
        };
        word.push(term);
    }
    Word::from_trusted(word, 2)
}

/// Prefix by repeated doubling `P -> P complement(P)` from `0`.
pub fn tm_prefix_flip(n: usize) -> Word {
    let mut word: Vec<Symbol> = Vec::with_capacity(n.next_power_of_two().max(1));
    word.push(0);
    double_until(&mut word, n);
    word.truncate(n);
    Word::from_trusted(word, 2)
}

fn double_until(word: &mut Vec<Symbol>, n: usize) {
    while word.len() < n {
        let len = word.len();
        word.extend_from_within(..len);
        word[len..].iter_mut().for_each(|s| *s = 1 - *s);
    }
}

/// Prefix computed term by term with [`tm_term`].
pub fn tm_prefix_terms(n: usize) -> Word {
    Word::from_trusted((0..n as u64).map(tm_term).collect(), 2)
}

/// The canonical generator used by the rest of the crate.
pub fn tm_prefix(n: usize) -> Word {
    tm_prefix_flip(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub agree: bool,
    pub first_mismatch: Option<usize>,
}

/// Smallest index where any of `prefixes` disagrees with the first one.
pub fn first_disagreement(prefixes: &[Word]) -> Agreement {
    let Some((reference, rest)) = prefixes.split_first() else {
        return Agreement { agree: true, first_mismatch: None };
    };
    let mismatch = rest
        .iter()
        .filter_map(|other| {
            let common = reference.len().min(other.len());
            (0..common)
                .find(|&i| reference.symbols()[i] != other.symbols()[i])
                .or((reference.len() != other.len()).then_some(common))
        })
        .min();
    Agreement { agree: mismatch.is_none(), first_mismatch: mismatch }
}

/// Whether all four generators produce the same length-`n` prefix.
pub fn definitions_agree(n: usize) -> Agreement {
    first_disagreement(&[tm_prefix_morphism(n), tm_prefix_terms(n), tm_prefix_recursive(n), tm_prefix_flip(n)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BlockKind {
    X,
    Y,
}

/// `x_k` or `y_k`, of length `2^k`.
pub fn partition_block(k: u32, which: BlockKind) -> Word {
    let mut word = tm_prefix_flip(1usize << k).into_symbols();
    if which == BlockKind::Y {
        word.iter_mut().for_each(|s| *s = 1 - *s);
    }
    Word::from_trusted(word, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionView {
    pub k: u32,
    pub labels: Vec<BlockKind>,
    pub prefix_length: usize,
}

impl PartitionView {
    /// Concatenates the labelled blocks back into a word.
    pub fn reconstruct(&self) -> Word {
        let x = partition_block(self.k, BlockKind::X);
        let y = partition_block(self.k, BlockKind::Y);
        let symbols = self
            .labels
            .iter()
            .flat_map(|l| match l {
                BlockKind::X => x.symbols(),
                BlockKind::Y => y.symbols(),
            })
            .copied()
            .collect();
        Word::from_trusted(symbols, 2)
    }
}

fn block_len(k: u32) -> Result<usize> {
    if k >= usize::BITS - 1 {
        return usage(format!("block exponent {k} too large"));
    }
    Ok(1usize << k)
}

/// Labels every `2^k`-aligned block of a Thue-Morse prefix as `x_k` or `y_k`.
pub fn partition_decompose(prefix: &Word, k: u32) -> Result<PartitionView> {
    let size = block_len(k)?;
    if prefix.alphabet_size() != 2 {
        return usage("partition decomposition needs a binary word");
    }
    if !prefix.len().is_multiple_of(size) {
        return usage(format!("prefix length {} is not a multiple of {size}", prefix.len()));
    }
    let x = partition_block(k, BlockKind::X);
    let y = partition_block(k, BlockKind::Y);
    let labels = prefix
        .symbols()
        .chunks(size)
        .enumerate()
        .map(|(i, block)| {
            if block == x.symbols() {
                Ok(BlockKind::X)
            } else if block == y.symbols() {
                Ok(BlockKind::Y)
            } else {
                Err(Error::Integrity(format!(
                    "aligned block {i} at index {} is neither x_{k} nor y_{k}; input is not a Thue-Morse prefix",
                    i * size
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionView { k, labels, prefix_length: prefix.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LookalikeOccurrence {
    /// `X` for a copy of `x_k`, `Y` for a copy of `y_k`.
    pub kind: BlockKind,
    pub start: usize,
    pub k: u32,
    /// Start of the two aligned blocks `[s, s + 2^(k+1))` containing the copy.
    pub window_start: usize,
    /// Labels of those two aligned blocks.
    pub surrounding: (BlockKind, BlockKind),
    /// True when the copy starts halfway into the window and the window is
    /// `y_k y_k` (for an `x_k` copy) or `x_k x_k` (for a `y_k` copy).
    pub centered: bool,
}

/// Every unaligned occurrence of a word equal symbol-by-symbol to `x_k` or
/// `y_k`, annotated with its surrounding aligned pair.
pub fn classify_lookalikes(prefix: &Word, k: u32) -> Result<Vec<LookalikeOccurrence>> {
    let view = partition_decompose(prefix, k)?;
    let size = 1usize << k;
    if k == 0 {
        return Ok(Vec::new());
    }
    let x = partition_block(k, BlockKind::X);
    let y = partition_block(k, BlockKind::Y);
    let s = prefix.symbols();
    let mut out = Vec::new();
    for start in (0..=s.len() - size).filter(|i| i % size != 0) {
        let window = &s[start..start + size];
        let kind = if window == x.symbols() {
            BlockKind::X
        } else if window == y.symbols() {
            BlockKind::Y
        } else {
            continue;
        };
        let block = start / size;
        let surrounding = (view.labels[block], view.labels[block + 1]);
        let opposite = match kind {
            BlockKind::X => BlockKind::Y,
            BlockKind::Y => BlockKind::X,
        };
        let centered = start % size == size / 2 && surrounding == (opposite, opposite);
        out.push(LookalikeOccurrence { kind, start, k, window_start: block * size, surrounding, centered });
    }
    Ok(out)
}

/// Cut positions `1, 2, 4, ...` not exceeding `n`.
pub fn mirror_positions(n: usize) -> Vec<usize> {
    std::iter::successors(Some(1usize), |&p| p.checked_mul(2)).take_while(|&p| p <= n).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorNeighbourhood {
    pub mirror: usize,
    /// Aligned pair ending at the mirror, if it fits inside the prefix.
    pub before: Option<(BlockKind, BlockKind)>,
    /// Aligned pair starting at the mirror, if it fits inside the prefix.
    pub after: Option<(BlockKind, BlockKind)>,
}

/// Partition-block pairs on either side of each mirror `2^j >= 2^(k+1)`.
pub fn mirror_neighbourhoods(prefix: &Word, k: u32) -> Result<Vec<MirrorNeighbourhood>> {
    let view = partition_decompose(prefix, k)?;
    let size = 1usize << k;
    let pair = |block: usize| -> Option<(BlockKind, BlockKind)> {
        Some((*view.labels.get(block)?, *view.labels.get(block + 1)?))
    };
    Ok(mirror_positions(prefix.len())
        .into_iter()
        .filter(|&m| m >= 2 * size)
        .map(|m| MirrorNeighbourhood { mirror: m, before: pair(m / size - 2), after: pair(m / size) })
        .collect())
}

/// Non-empty seed for the flipping construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSeed(Word);

impl FlipSeed {
    pub fn new(seed: Word) -> Result<Self> {
        if seed.is_empty() || seed.alphabet_size() != 2 {
            return usage("flip seed must be a nonempty binary word");
        }
        Ok(Self(seed))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }
}

/// Prefix of the sequence obtained by doubling `P -> P complement(P)` from
/// the seed. Equal to replacing each Thue-Morse term `t` by the seed (`t = 0`)
/// or its complement (`t = 1`).
pub fn seeded_flip_prefix(seed: &FlipSeed, n: usize) -> Word {
    let mut word = seed.word().symbols().to_vec();
    double_until(&mut word, n);
    word.truncate(n);
    Word::from_trusted(word, 2)
}
