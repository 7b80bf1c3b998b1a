//! The `kappa` construction: every word of `{1,2}^n`, for growing `n`, written
//! in unary with zero-gaps taken from a square-free sequence over three
//! integers `>= 2`.
//!
//! A block `u_1 ... u_n` encodes as `1^{u_1} 0^{a_1} 1^{u_2} ... 0^{a_{n-1}} 1^{u_n}`,
//! where `a_i` depends only on the position `i` inside the block. Blocks of
//! one section are joined by single zeros, and so are consecutive sections.

use serde::Serialize;

use crate::derived::{run_length_profile, TernarySource};
use crate::error::{usage, Result};
use crate::words::{relabel, Symbol, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockOrder {
    /// `22..2` first, `11..1` last.
    #[default]
    DescLex,
    AscLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodBConfig {
    gap_values: [u8; 3],
    source: TernarySource,
    block_order: BlockOrder,
    start_section: usize,
}

impl Default for MethodBConfig {
    fn default() -> Self {
        Self { gap_values: [2, 3, 4], source: TernarySource::Theta, block_order: BlockOrder::DescLex, start_section: 2 }
    }
}

/// Sections above this size would not fit a block index in `u64`.
const MAX_SECTION: usize = 62;

impl MethodBConfig {
    pub fn new(
        gap_values: [u8; 3],
        source: TernarySource,
        block_order: BlockOrder,
        start_section: usize,
    ) -> Result<Self> {
        let [a, b, c] = gap_values;
        if a == b || b == c || a == c || gap_values.iter().any(|&g| g < 2) {
            return usage(format!("gap values {gap_values:?} must be three distinct integers >= 2"));
        }
        if !(2..=MAX_SECTION).contains(&start_section) {
            return usage(format!("start section {start_section} outside 2..={MAX_SECTION}"));
        }
        Ok(Self { gap_values, source, block_order, start_section })
    }

    pub fn gap_values(&self) -> [u8; 3] {
        self.gap_values
    }

    pub fn block_order(&self) -> BlockOrder {
        self.block_order
    }

    pub fn start_section(&self) -> usize {
        self.start_section
    }

    pub fn source(&self) -> TernarySource {
        self.source
    }

    /// `a_1, ..., a_count`: the ternary source relabelled onto the gap values.
    pub fn gap_sequence(&self, count: usize) -> Vec<usize> {
        let [a, b, c] = self.gap_values;
        let word = relabel(&self.source.prefix(count), &[(0, a), (1, b), (2, c)]).expect("gap values are distinct");
        word.symbols().iter().map(|&g| g as usize).collect()
    }
}

/// Block `index` of `{1,2}^n` in the given order.
fn block_at(n: usize, index: u64, order: BlockOrder) -> Vec<Symbol> {
    let code = match order {
        BlockOrder::DescLex => (1u64 << n) - 1 - index,
        BlockOrder::AscLex => index,
    };
    (0..n).map(|i| if (code >> (n - 1 - i)) & 1 == 1 { 2 } else { 1 }).collect()
}

/// All `2^n` words over `{1, 2}` of length `n`, in `order`.
pub fn enumerate_blocks(n: usize, order: BlockOrder) -> Result<Vec<Word>> {
    if n == 0 || n > 24 {
        return usage(format!("section {n} outside 1..=24 for full enumeration"));
    }
    Ok((0..1u64 << n).map(|i| Word::from_trusted(block_at(n, i, order), 3)).collect())
}

fn push_block(out: &mut Vec<Symbol>, block: &[Symbol], gaps: &[usize]) {
    for (i, &d) in block.iter().enumerate() {
        if i > 0 {
            out.extend(std::iter::repeat_n(0, gaps[i - 1]));
        }
        out.extend(std::iter::repeat_n(1, d as usize));
    }
}

pub fn encode_block(block: &Word, gaps: &[usize]) -> Result<Word> {
    if block.is_empty() || gaps.len() + 1 != block.len() {
        return usage(format!(
            "block of length {} needs {} gaps, got {}",
            block.len(),
            block.len().saturating_sub(1),
            gaps.len()
        ));
    }
    if block.symbols().iter().any(|&d| d != 1 && d != 2) {
        return usage(format!("block {block} is not over {{1,2}}"));
    }
    if gaps.iter().any(|&g| g < 2) {
        return usage("every gap must be at least 2");
    }
    let mut out = Vec::new();
    push_block(&mut out, block.symbols(), gaps);
    Ok(Word::from_trusted(out, 2))
}

/// First `n` symbols of `kappa`.
pub fn kappa_prefix(config: &MethodBConfig, n: usize) -> Word {
    let mut out: Vec<Symbol> = Vec::with_capacity(n);
    let mut section = config.start_section;
    let mut gaps = config.gap_sequence(section);
    'sections: while out.len() < n {
        assert!(section <= MAX_SECTION, "kappa prefix too long");
        if gaps.len() < section {
            gaps = config.gap_sequence(2 * section);
        }
        if section > config.start_section {
            out.push(0);
        }
        for index in 0..1u64 << section {
            if out.len() >= n {
                break 'sections;
            }
            if index > 0 {
                out.push(0);
            }
            push_block(&mut out, &block_at(section, index, config.block_order), &gaps[..section - 1]);
        }
        section += 1;
    }
    out.truncate(n);
    Word::from_trusted(out, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaSection {
    pub n: usize,
    pub blocks: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaLayout {
    pub sections: Vec<KappaSection>,
    /// Indices of the single separating zeros, between blocks and sections.
    pub separators: Vec<usize>,
    pub word: Word,
}

/// The first `section_count` complete sections with their layout.
pub fn kappa_layout(config: &MethodBConfig, section_count: usize) -> Result<KappaLayout> {
    let last = config.start_section + section_count;
    if last > 25 {
        return usage("layout limited to sections up to 24");
    }
    let gaps = config.gap_sequence(last);
    let mut out = Vec::new();
    let mut separators = Vec::new();
    let mut sections = Vec::new();
    for n in config.start_section..last {
        let blocks = enumerate_blocks(n, config.block_order)?;
        for (i, b) in blocks.iter().enumerate() {
            if n > config.start_section || i > 0 {
                separators.push(out.len());
                out.push(0);
            }
            push_block(&mut out, b.symbols(), &gaps[..n - 1]);
        }
        sections.push(KappaSection { n, blocks });
    }
    Ok(KappaLayout { sections, separators, word: Word::from_trusted(out, 2) })
}

/// One block recovered from a `kappa`-style word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodedBlock {
    pub digits: Vec<Symbol>,
    pub gaps: Vec<usize>,
}

/// Splits a word at its single zeros and reads each piece back as digits and
/// gaps. The final block may be incomplete if the word is a truncated prefix.
pub fn decode_kappa(word: &Word) -> Result<Vec<DecodedBlock>> {
    let mut blocks = Vec::new();
    let mut cur = DecodedBlock { digits: Vec::new(), gaps: Vec::new() };
    for (symbol, len) in run_length_profile(word).runs {
        match (symbol, len) {
            (1, 1 | 2) => cur.digits.push(len as Symbol),
            (1, _) => return usage(format!("run of {len} ones cannot encode a digit")),
            (0, 1) => blocks.push(std::mem::replace(&mut cur, DecodedBlock { digits: Vec::new(), gaps: Vec::new() })),
            (0, _) => cur.gaps.push(len),
            _ => return usage("kappa words are binary"),
        }
    }
    if !cur.digits.is_empty() || !cur.gaps.is_empty() {
        blocks.push(cur);
    }
    Ok(blocks)
}
