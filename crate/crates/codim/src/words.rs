//! Brute-force oracles on multilinear words, independent of the series
//! engine.
//!
//! A multilinear word of degree n is a word in which each of n distinct
//! letters appears exactly once; the oracles enumerate all n! of them (or
//! all set partitions, for the basis counts) and count by definition.
//! Their totals must reproduce n!·a_n of the corresponding catalog series,
//! which is exactly what the acceptance suite checks.
//!
//! Two independent membership tests are kept for m-Lie indecomposability:
//! the split-at-the-senior-letter recursion and a literal search for a
//! decomposition into m adjacent regular factors with decreasing leading
//! letters. Likewise regularity is implemented both as "starts with the
//! senior letter" and by comparing against every rotation.

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("the empty word has no regularity status")]
    EmptyWord,
    #[error("letter {letter} appears twice")]
    DuplicateLetter { letter: u32 },
    #[error("letters must be positive")]
    ZeroLetter,
    #[error("degree {n} below minimum {min}")]
    DegreeTooSmall { n: usize, min: usize },
}

/// A word with pairwise distinct positive letters; the empty word is the
/// identity of concatenation and belongs to every Q_m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearWord {
    letters: Vec<u32>,
}

impl MultilinearWord {
    pub fn new(letters: Vec<u32>) -> Result<Self, WordError> {
        let mut seen = letters.clone();
        seen.sort_unstable();
        if seen.first() == Some(&0) {
            return Err(WordError::ZeroLetter);
        }
        for pair in seen.windows(2) {
            if pair[0] == pair[1] {
                return Err(WordError::DuplicateLetter { letter: pair[0] });
            }
        }
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Regularity via the senior-letter criterion: a multilinear word is
/// regular iff it starts with its maximal letter.
pub fn is_regular(w: &MultilinearWord) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(regular_slice(w.letters()))
}

/// Regularity by definition: w > ba for every split w = ab with both
/// parts nonempty. Agrees with [`is_regular`] on multilinear words; the
/// test suite checks the equivalence exhaustively.
pub fn is_regular_by_rotation(w: &MultilinearWord) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(regular_by_rotation_slice(w.letters()))
}

fn regular_slice(w: &[u32]) -> bool {
    let max = *w.iter().max().expect("nonempty");
    w[0] == max
}

fn regular_by_rotation_slice(w: &[u32]) -> bool {
    let n = w.len();
    (1..n).all(|k| {
        let rotation = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rotation) == std::cmp::Ordering::Greater
    })
}

/// Membership in Q_m by the senior-letter recursion: w = w'·x·w'' with x
/// the maximal letter is m-Lie indecomposable iff w' is and w'' is
/// (m−1)-Lie indecomposable; the empty word lies in every Q_m and no
/// nonempty word lies in Q_1.
pub fn is_m_indecomposable(w: &MultilinearWord, m: u32) -> bool {
    assert!(m >= 1, "m-Lie indecomposability needs m >= 1");
    indecomposable_slice(w.letters(), m)
}

fn indecomposable_slice(w: &[u32], m: u32) -> bool {
    if w.is_empty() {
        return true;
    }
    if m == 1 {
        return false;
    }
    let senior = w
        .iter()
        .position_max()
        .expect("nonempty word has a maximal letter");
    indecomposable_slice(&w[..senior], m) && indecomposable_slice(&w[senior + 1..], m - 1)
}

/// Literal search for an m-Lie decomposition w = a·w_m⋯w_1·b: m adjacent
/// nonempty regular factors whose leading letters strictly decrease left
/// to right. Regularity inside the search uses the rotation definition,
/// so this path shares nothing with [`is_m_indecomposable`].
pub fn has_m_lie_decomposition(w: &MultilinearWord, m: u32) -> bool {
    assert!(m >= 1, "decomposition search needs m >= 1");
    let word = w.letters();
    (0..word.len()).any(|start| search_factors(word, start, m, u32::MAX))
}

fn search_factors(word: &[u32], pos: usize, remaining: u32, prev_first: u32) -> bool {
    if remaining == 0 {
        return true; // the rest is the arbitrary suffix b
    }
    if pos >= word.len() {
        return false;
    }
    let first = word[pos];
    if first >= prev_first {
        return false;
    }
    (pos + 1..=word.len()).any(|end| {
        regular_by_rotation_slice(&word[pos..end])
            && search_factors(word, end, remaining - 1, first)
    })
}

/// Cross-checkable counts of one degree of one word family.
///
/// A report with unequal counts is the failure artifact of a cross-check;
/// absent counts were simply not requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCountReport {
    pub n: usize,
    pub m: u32,
    pub count_recursive: u64,
    pub count_naive: Option<u64>,
    pub count_series: Option<u64>,
}

impl WordCountReport {
    pub fn with_series_count(mut self, count: u64) -> Self {
        self.count_series = Some(count);
        self
    }

    /// True when every count that is present agrees.
    pub fn counts_agree(&self) -> bool {
        self.count_naive.is_none_or(|c| c == self.count_recursive)
            && self.count_series.is_none_or(|c| c == self.count_recursive)
    }
}

/// Count Q_m words of degree n over all n! permutation words.
pub fn count_qm(n: usize, m: u32) -> WordCountReport {
    count_permutation_words(n, m, false)
}

/// Count R_m (regular and m-Lie indecomposable) words of degree n.
pub fn count_rm(n: usize, m: u32) -> WordCountReport {
    count_permutation_words(n, m, true)
}

fn count_permutation_words(n: usize, m: u32, regular_only: bool) -> WordCountReport {
    let mut recursive = 0u64;
    let mut naive = 0u64;
    if n == 0 {
        // The empty word: in every Q_m, in no R_m.
        recursive = u64::from(!regular_only);
        naive = recursive;
    } else {
        for word in (1..=n as u32).permutations(n) {
            if regular_only && !regular_slice(&word) {
                continue;
            }
            if indecomposable_slice(&word, m) {
                recursive += 1;
            }
            if !(0..word.len()).any(|start| search_factors(&word, start, m, u32::MAX)) {
                naive += 1;
            }
        }
    }
    WordCountReport {
        n,
        m,
        count_recursive: recursive,
        count_naive: Some(naive),
        count_series: None,
    }
}

/// Which of the relaxed tower families to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeKind {
    Q,
    R,
}

/// Count degree-n products generated by the relaxed recursion
/// t̃R_m = {x·w₀ | w₀ ∈ t̃Q_{m−1}}, t̃Q_m = ordered products of t̃R_m
/// factors (the x > w₀ requirement of the strict family is dropped).
///
/// Products are counted as formal factorizations: a t̃Q_m element is a set
/// partition of the letters with a t̃R_m word on each block, sorted into
/// its unique admissible order. The recursion runs over letter subsets as
/// bitmasks, so nothing here touches the series engine.
pub fn count_tilde(n: usize, m: u32, kind: TildeKind) -> WordCountReport {
    assert!(m >= 1);
    assert!(n <= 16, "tilde enumeration is exponential in n");
    let mut memo = HashMap::new();
    let full = (1u32 << n) - 1;
    let count = match kind {
        TildeKind::Q => tilde_q_count(full, m, &mut memo),
        TildeKind::R => tilde_r_count(full, m, &mut memo),
    };
    WordCountReport {
        n,
        m,
        count_recursive: count,
        count_naive: None,
        count_series: None,
    }
}

fn tilde_q_count(mask: u32, m: u32, memo: &mut HashMap<(u32, u32), u64>) -> u64 {
    if m == 1 {
        return u64::from(mask == 0);
    }
    if mask == 0 {
        return 1;
    }
    if let Some(&hit) = memo.get(&(mask, m)) {
        return hit;
    }
    // The block containing the lowest letter, over all sub-blocks.
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut total = 0u64;
    let mut sub = rest;
    loop {
        let block = sub | low;
        total += tilde_r_count(block, m, memo) * tilde_q_count(mask ^ block, m, memo);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    memo.insert((mask, m), total);
    total
}

fn tilde_r_count(mask: u32, m: u32, memo: &mut HashMap<(u32, u32), u64>) -> u64 {
    if mask == 0 || m == 1 {
        return 0;
    }
    let mut total = 0u64;
    let mut rem = mask;
    while rem != 0 {
        let head = rem & rem.wrapping_neg();
        total += tilde_q_count(mask ^ head, m - 1, memo);
        rem ^= head;
    }
    total
}

/// Count multilinear Kuzmin elements of degree n: permutations
/// (i_1,…,i_n) of {1..n} with i_1>i_2, i_3>i_4, i_1≥i_3 and
/// i_4 ≤ i_2 ≤ i_5 ≤ i_6 ≤ ⋯ ≤ i_n. The closed count is n(n−3)/2.
pub fn count_kuzmin(n: usize) -> Result<u64, WordError> {
    if n < 4 {
        return Err(WordError::DegreeTooSmall { n, min: 4 });
    }
    let mut count = 0u64;
    for p in (1..=n as u32).permutations(n) {
        if p[0] > p[1] && p[2] > p[3] && p[0] >= p[2] && p[3] <= p[1] {
            let tail_sorted = std::iter::once(p[1])
                .chain(p[4..].iter().copied())
                .tuple_windows()
                .all(|(a, b)| a <= b);
            if tail_sorted {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Dimension of the degree-n multilinear component of the second derived
/// algebra of the free centre-by-metabelian Lie algebra: the Kuzmin
/// elements plus one extra generator, which survives in every even degree
/// and, in odd degrees, only over fields of characteristic 2 (it spans a
/// 2-torsion summand of the free ring).
pub fn count_cbm_second_derived(n: usize, char_two: bool) -> Result<u64, WordError> {
    let kuzmin = count_kuzmin(n)?;
    let extra = u64::from(char_two || n.is_multiple_of(2));
    Ok(kuzmin + extra)
}

/// Multilinear basis of the free Poisson algebra in degree n: sum over set
/// partitions of {1..n} of the product of (|B|−1)! over blocks (each block
/// carries one multilinear free-Lie basis element). The total is n!.
pub fn count_free_poisson_multilinear(n: usize) -> u64 {
    let mut total = 0u64;
    let mut block_sizes: Vec<u64> = Vec::new();
    assign_next(1, n, 1, &mut block_sizes, &mut total);
    total
}

fn assign_next(i: usize, n: usize, weight: u64, block_sizes: &mut Vec<u64>, total: &mut u64) {
    if i > n {
        *total += weight;
        return;
    }
    // Joining a block of size k multiplies its Lie-basis count by k.
    for b in 0..block_sizes.len() {
        let k = block_sizes[b];
        block_sizes[b] += 1;
        assign_next(i + 1, n, weight * k, block_sizes, total);
        block_sizes[b] -= 1;
    }
    block_sizes.push(1);
    assign_next(i + 1, n, weight, block_sizes, total);
    block_sizes.pop();
}
