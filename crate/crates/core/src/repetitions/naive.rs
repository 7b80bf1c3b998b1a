use crate::words::Word;

use super::SquareWitness;

/// Leftmost square of `text` (shortest root on ties) by exhaustive scan.
///
/// Quadratic to cubic time; this is the reference the fast detector is
/// checked against. The returned root is always primitive, and the witness
/// carries the largest exponent of that root at that start.
pub fn find_square_naive(text: &Word) -> Option<SquareWitness> {
    let s = text.symbols();
    let n = s.len();
    for start in 0..n {
        for l in 1..=(n - start) / 2 {
            if s[start..start + l] == s[start + l..start + 2 * l] {
                let mut end = start + 2 * l;
                while end < n && s[end] == s[end - l] {
                    end += 1;
                }
                let exponent = (end - start) / l;
                return Some(SquareWitness {
                    start,
                    root: text.factor(start..start + l),
                    exponent,
                    overlap_extra: end - start > exponent * l,
                });
            }
        }
    }
    None
}
