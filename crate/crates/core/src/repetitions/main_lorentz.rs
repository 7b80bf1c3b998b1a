//! Main-Lorentz divide and conquer over centred squares.
//!
//! Each recursion node splits its slice into `u v` and finds every square
//! that contains both `u`'s last symbol and `v`'s first one. For a fixed half
//! length the admissible start positions form one interval, so the node emits
//! `O(|u v|)` intervals and the whole scan runs in `O(n log n)`.

use crate::words::Symbol;

/// Squares of half-length `period` starting at every index in `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct SquareFamily {
    pub period: usize,
    pub lo: usize,
    pub hi: usize,
}

const PARALLEL_THRESHOLD: usize = 1 << 15;

pub(crate) fn square_families(text: &[Symbol]) -> Vec<SquareFamily> {
    let mut out = Vec::new();
    scan(text, 0, &mut out);
    out
}

fn scan(s: &[Symbol], offset: usize, out: &mut Vec<SquareFamily>) {
    let n = s.len();
    if n < 2 {
        return;
    }
    let nu = n / 2;
    let (u, v) = s.split_at(nu);
    if n >= PARALLEL_THRESHOLD {
        let (mut left, right) = rayon::join(
            || {
                let mut acc = Vec::new();
                scan(u, offset, &mut acc);
                acc
            },
            || {
                let mut acc = Vec::new();
                scan(v, offset + nu, &mut acc);
                acc
            },
        );
        out.append(&mut left);
        out.extend(right);
    } else {
        scan(u, offset, out);
        scan(v, offset + nu, out);
    }
    crossing(u, v, offset, out);
}

/// Squares `s[pos..pos + 2l]` of `s = u v` with `pos < |u| < pos + 2l`.
fn crossing(u: &[Symbol], v: &[Symbol], offset: usize, out: &mut Vec<SquareFamily>) {
    let nu = u.len() as isize;
    let nv = v.len();
    let ru: Vec<Symbol> = u.iter().rev().copied().collect();
    let rv: Vec<Symbol> = v.iter().rev().copied().collect();
    let z_ru = z_function(&ru);
    let z_v = z_function(v);
    // lcp(u[i..], v) and lcp(rv[i..], ru)
    let v_in_u = lcp_against(v, &z_v, u);
    let ru_in_rv = lcp_against(&ru, &z_ru, &rv);

    let mut emit = |l: usize, lo: isize, hi: isize| {
        if lo <= hi {
            out.push(SquareFamily { period: l, lo: offset + lo as usize, hi: offset + hi as usize });
        }
    };

    // Second copy starts inside u (or exactly at the split).
    for l in 1..=u.len() {
        let back = if l < u.len() { z_ru[l] } else { 0 } as isize;
        let fwd = v_in_u[u.len() - l] as isize;
        let li = l as isize;
        let lo = (nu - li - back).max(nu - 2 * li + 1);
        let hi = (nu - 2 * li + fwd).min(nu - li);
        emit(l, lo, hi);
    }
    // Second copy starts inside v.
    for l in 1..=nv {
        let back = ru_in_rv[nv - l] as isize;
        let fwd = if l < nv { z_v[l] } else { 0 } as isize;
        let li = l as isize;
        let lo = (nu - back).max(nu + 1 - li);
        let hi = (nu + fwd - li).min(nu - 1);
        emit(l, lo, hi);
    }
}

pub(crate) fn z_function(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while i + k < n && s[k] == s[i + k] {
            k += 1;
        }
        z[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

/// `out[i] = lcp(text[i..], pattern)`, given `z = z_function(pattern)`.
pub(crate) fn lcp_against(pattern: &[Symbol], z: &[usize], text: &[Symbol]) -> Vec<usize> {
    let (m, n) = (pattern.len(), text.len());
    let mut out = vec![0; n];
    let (mut l, mut r) = (0, 0);
    for i in 0..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while k < m && i + k < n && pattern[k] == text[i + k] {
            k += 1;
        }
        out[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all_squares_brute(s: &[Symbol]) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in 0..s.len() {
            for l in 1..=(s.len() - i) / 2 {
                if s[i..i + l] == s[i + l..i + 2 * l] {
                    out.insert((l, i));
                }
            }
        }
        out
    }

    fn expand(families: &[SquareFamily]) -> BTreeSet<(usize, usize)> {
        families.iter().flat_map(|f| (f.lo..=f.hi).map(move |i| (f.period, i))).collect()
    }

    #[test]
    fn z_and_lcp() {
        assert_eq!(z_function(&[0, 0, 1, 0, 0]), vec![5, 1, 0, 2, 1]);
        let p = [0, 1, 0];
        assert_eq!(lcp_against(&p, &z_function(&p), &[1, 0, 1, 0, 0]), vec![0, 3, 0, 1, 1]);
    }

    #[test]
    fn families_cover_every_square_exactly_once() {
        let mut state = 12345u64;
        for len in 0..90 {
            for alphabet in 1..=3u64 {
                let s: Vec<Symbol> = (0..len)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((state >> 33) % alphabet) as Symbol
                    })
                    .collect();
                let fams = square_families(&s);
                let total: usize = fams.iter().map(|f| f.hi - f.lo + 1).sum();
                let expanded = expand(&fams);
                assert_eq!(expanded, all_squares_brute(&s), "{s:?}");
                assert_eq!(total, expanded.len(), "duplicate report for {s:?}");
            }
        }
    }
}
