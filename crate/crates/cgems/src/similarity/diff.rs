//! Ratcliff–Obershelp sequence matching.
//!
//! A faithful port of the classic "gestalt" matcher: recursively find the
//! longest matching block, then match the pieces to its left and right.
//! The similarity ratio is `2*M / T` where `M` is the total size of all
//! matching blocks and `T` the combined length of both sequences.
//!
//! Long second sequences get the usual *popular element* heuristic: when
//! `b` has at least 200 elements, elements accounting for more than
//! `len(b)/100 + 1` occurrences stop anchoring matches (they can still be
//! swallowed by block extension). This keeps behaviour aligned with the
//! widely used reference implementation so ratios are comparable across
//! tools.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

/// One matching block: `a[a_start..a_start+size] == b[b_start..b_start+size]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match {
    pub a_start: usize,
    pub b_start: usize,
    pub size: usize,
}

/// Edit-script operation tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpTag {
    Equal,
    Replace,
    Delete,
    Insert,
}

/// One edit-script step over half-open ranges of both sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Opcode {
    pub tag: OpTag,
    pub a_start: usize,
    pub a_end: usize,
    pub b_start: usize,
    pub b_end: usize,
}

/// Matcher over two borrowed sequences.
pub struct SequenceMatcher<'a, T: Eq + Hash> {
    a: &'a [T],
    b: &'a [T],
    /// Positions of each element of `b`, minus popular elements.
    b2j: HashMap<&'a T, Vec<usize>>,
}

impl<'a, T: Eq + Hash> SequenceMatcher<'a, T> {
    pub fn new(a: &'a [T], b: &'a [T]) -> Self {
        let mut b2j: HashMap<&T, Vec<usize>> = HashMap::new();
        for (j, element) in b.iter().enumerate() {
            b2j.entry(element).or_default().push(j);
        }
        if b.len() >= 200 {
            let threshold = b.len() / 100 + 1;
            b2j.retain(|_, positions| positions.len() <= threshold);
        }
        SequenceMatcher { a, b, b2j }
    }

    /// Longest matching block within `a[alo..ahi]` and `b[blo..bhi]`,
    /// preferring the earliest in `a`, then the earliest in `b`.
    pub fn find_longest_match(&self, alo: usize, ahi: usize, blo: usize, bhi: usize) -> Match {
        let (mut best_i, mut best_j, mut best_size) = (alo, blo, 0usize);
        let mut j2len: HashMap<usize, usize> = HashMap::new();
        for i in alo..ahi {
            let mut new_j2len: HashMap<usize, usize> = HashMap::new();
            if let Some(positions) = self.b2j.get(&self.a[i]) {
                for &j in positions {
                    if j < blo {
                        continue;
                    }
                    if j >= bhi {
                        break;
                    }
                    let k = if j == 0 { 1 } else { j2len.get(&(j - 1)).copied().unwrap_or(0) + 1 };
                    new_j2len.insert(j, k);
                    if k > best_size {
                        best_i = i + 1 - k;
                        best_j = j + 1 - k;
                        best_size = k;
                    }
                }
            }
            j2len = new_j2len;
        }
        // Extend over popular elements excluded from the index.
        while best_i > alo
            && best_j > blo
            && self.a[best_i - 1] == self.b[best_j - 1]
        {
            best_i -= 1;
            best_j -= 1;
            best_size += 1;
        }
        while best_i + best_size < ahi
            && best_j + best_size < bhi
            && self.a[best_i + best_size] == self.b[best_j + best_size]
        {
            best_size += 1;
        }
        Match { a_start: best_i, b_start: best_j, size: best_size }
    }

    /// All matching blocks in order, adjacent blocks merged, terminated by
    /// the zero-size sentinel at `(len(a), len(b))`.
    pub fn matching_blocks(&self) -> Vec<Match> {
        let mut queue = vec![(0usize, self.a.len(), 0usize, self.b.len())];
        let mut raw: Vec<Match> = Vec::new();
        while let Some((alo, ahi, blo, bhi)) = queue.pop() {
            let m = self.find_longest_match(alo, ahi, blo, bhi);
            if m.size > 0 {
                raw.push(m);
                if alo < m.a_start && blo < m.b_start {
                    queue.push((alo, m.a_start, blo, m.b_start));
                }
                if m.a_start + m.size < ahi && m.b_start + m.size < bhi {
                    queue.push((m.a_start + m.size, ahi, m.b_start + m.size, bhi));
                }
            }
        }
        raw.sort_by_key(|m| (m.a_start, m.b_start));

        let mut merged: Vec<Match> = Vec::new();
        for m in raw {
            match merged.last_mut() {
                Some(last)
                    if last.a_start + last.size == m.a_start
                        && last.b_start + last.size == m.b_start =>
                {
                    last.size += m.size;
                }
                _ => merged.push(m),
            }
        }
        merged.push(Match { a_start: self.a.len(), b_start: self.b.len(), size: 0 });
        merged
    }

    /// Edit script turning `a` into `b`.
    pub fn opcodes(&self) -> Vec<Opcode> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        for m in self.matching_blocks() {
            let tag = match (i < m.a_start, j < m.b_start) {
                (true, true) => Some(OpTag::Replace),
                (true, false) => Some(OpTag::Delete),
                (false, true) => Some(OpTag::Insert),
                (false, false) => None,
            };
            if let Some(tag) = tag {
                out.push(Opcode { tag, a_start: i, a_end: m.a_start, b_start: j, b_end: m.b_start });
            }
            i = m.a_start + m.size;
            j = m.b_start + m.size;
            if m.size > 0 {
                out.push(Opcode {
                    tag: OpTag::Equal,
                    a_start: m.a_start,
                    a_end: i,
                    b_start: m.b_start,
                    b_end: j,
                });
            }
        }
        out
    }

    /// Similarity in `[0, 1]`: `2*M / T`, defined as 1 when both
    /// sequences are empty.
    pub fn ratio(&self) -> f64 {
        let matches: usize = self.matching_blocks().iter().map(|m| m.size).sum();
        let total = self.a.len() + self.b.len();
        if total == 0 {
            1.0
        } else {
            2.0 * matches as f64 / total as f64
        }
    }
}

/// Character-level similarity ratio of two texts.
pub fn sequence_ratio(a: &str, b: &str) -> f64 {
    let a_chars: Vec<char> = a.chars().collect();
    let b_chars: Vec<char> = b.chars().collect();
    SequenceMatcher::new(&a_chars, &b_chars).ratio()
}

/// Minimal line-edit count derived from the line-level edit script:
/// a replace costs the larger side, deletes and inserts cost their own
/// length, equal ranges are free.
pub fn edit_count(a: &str, b: &str) -> usize {
    let a_lines: Vec<&str> = a.lines().collect();
    let b_lines: Vec<&str> = b.lines().collect();
    SequenceMatcher::new(&a_lines, &b_lines)
        .opcodes()
        .iter()
        .map(|op| match op.tag {
            OpTag::Equal => 0,
            OpTag::Replace => (op.a_end - op.a_start).max(op.b_end - op.b_start),
            OpTag::Delete => op.a_end - op.a_start,
            OpTag::Insert => op.b_end - op.b_start,
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_of_identical_texts_is_one() {
        assert_eq!(sequence_ratio("abcd", "abcd"), 1.0);
        assert_eq!(sequence_ratio("", ""), 1.0);
    }

    #[test]
    fn ratio_of_disjoint_texts_is_zero() {
        assert_eq!(sequence_ratio("abc", "xyz"), 0.0);
    }

    #[test]
    fn ratio_matches_reference_value() {
        assert_eq!(sequence_ratio("abcd", "bcde"), 0.75);
    }

    #[test]
    fn ratio_against_empty_is_zero() {
        assert_eq!(sequence_ratio("abc", ""), 0.0);
        assert_eq!(sequence_ratio("", "abc"), 0.0);
    }

    #[test]
    fn opcodes_match_reference_example() {
        let a: Vec<char> = "qabxcd".chars().collect();
        let b: Vec<char> = "abycdf".chars().collect();
        let ops = SequenceMatcher::new(&a, &b).opcodes();
        let want = vec![
            Opcode { tag: OpTag::Delete, a_start: 0, a_end: 1, b_start: 0, b_end: 0 },
            Opcode { tag: OpTag::Equal, a_start: 1, a_end: 3, b_start: 0, b_end: 2 },
            Opcode { tag: OpTag::Replace, a_start: 3, a_end: 4, b_start: 2, b_end: 3 },
            Opcode { tag: OpTag::Equal, a_start: 4, a_end: 6, b_start: 3, b_end: 5 },
            Opcode { tag: OpTag::Insert, a_start: 6, a_end: 6, b_start: 5, b_end: 6 },
        ];
        assert_eq!(ops, want);
    }

    #[test]
    fn matching_blocks_merge_adjacent_runs_and_end_with_sentinel() {
        let a: Vec<char> = "abxcd".chars().collect();
        let b: Vec<char> = "abcd".chars().collect();
        let blocks = SequenceMatcher::new(&a, &b).matching_blocks();
        assert_eq!(
            blocks,
            vec![
                Match { a_start: 0, b_start: 0, size: 2 },
                Match { a_start: 3, b_start: 2, size: 2 },
                Match { a_start: 5, b_start: 4, size: 0 },
            ]
        );
    }

    #[test]
    fn edit_count_is_zero_for_identical_code() {
        let code = "def f():\n    return 1\n";
        assert_eq!(edit_count(code, code), 0);
    }

    #[test]
    fn edit_count_counts_changed_inserted_and_deleted_lines() {
        let a = "one\ntwo\nthree\nfour\n";
        let b = "one\nTWO\nthree\nfive\nsix\n";
        // two -> TWO is a replace (1); four -> five+six is a replace
        // costing max(1, 2) = 2.
        assert_eq!(edit_count(a, b), 3);
    }

    #[test]
    fn edit_count_of_pure_insertion() {
        let a = "one\n";
        let b = "one\ntwo\nthree\n";
        assert_eq!(edit_count(a, b), 2);
    }

    #[test]
    fn edit_count_of_pure_deletion() {
        let a = "one\ntwo\nthree\n";
        let b = "two\n";
        assert_eq!(edit_count(a, b), 2);
    }

    #[test]
    fn popular_elements_stop_anchoring_on_long_inputs() {
        // Over 200 elements, characters occurring more than len/100 + 1
        // times no longer anchor matches. Expected values are frozen from
        // the reference implementation.
        let a = "x = 1\n".repeat(40) + "total = x\n";
        let b = "x = 1\n".repeat(40) + "total = x + 1\n";
        let got = sequence_ratio(&a, &b);
        assert!((got - 0.9880952380952381).abs() < 1e-15, "got {got}");

        let a: String = (0..30).map(|i| format!("line_{i} = {i}\n")).collect();
        let b: String = (0..30).map(|i| format!("line_{i} = {}\n", i + 1)).collect();
        let got = sequence_ratio(&a, &b);
        assert!((got - 0.024291497975708502).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn code_pair_ratio_and_edits_match_reference_values() {
        let generated = "def add(a, b):\n    return a+b\n\nprint(add(2, 3))\n";
        let corrected =
            "def add(a, b):\n    total = a + b\n    return total\n\nprint(add(2, 3))\n";
        let got = sequence_ratio(generated, corrected);
        assert!((got - 0.7931034482758621).abs() < 1e-15, "got {got}");
        // Line 2 is replaced by two lines: a single replace costing 2.
        assert_eq!(edit_count(generated, corrected), 2);
    }
}
