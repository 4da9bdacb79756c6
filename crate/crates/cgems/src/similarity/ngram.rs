//! N-gram overlap scores: BLEU and the ROUGE family.
//!
//! Texts are tokenized by whitespace. Scores are reported on a 0–100
//! scale. BLEU uses up to 4-gram precision with no smoothing; for short
//! texts the order is capped at the longest n-gram both sides can form,
//! so two identical three-word texts still score 100 instead of zero.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Which ROUGE variant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RougeVariant {
    /// Unigram overlap.
    Rouge1,
    /// Bigram overlap.
    Rouge2,
    /// Longest common subsequence.
    RougeL,
}

/// Precision / recall / F1 triple on a 0–100 scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl RougeScore {
    const ZERO: RougeScore = RougeScore { precision: 0.0, recall: 0.0, f1: 0.0 };

    fn from_fractions(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        RougeScore { precision: precision * 100.0, recall: recall * 100.0, f1: f1 * 100.0 }
    }
}

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    if n == 0 || tokens.len() < n {
        return counts;
    }
    for window in tokens.windows(n) {
        *counts.entry(window).or_insert(0) += 1;
    }
    counts
}

fn clipped_overlap(hyp: &[&str], reference: &[&str], n: usize) -> (usize, usize, usize) {
    let hyp_counts = ngram_counts(hyp, n);
    let ref_counts = ngram_counts(reference, n);
    let overlap: usize = hyp_counts
        .iter()
        .map(|(gram, &count)| count.min(ref_counts.get(gram).copied().unwrap_or(0)))
        .sum();
    let hyp_total = hyp.len().saturating_sub(n - 1);
    let ref_total = reference.len().saturating_sub(n - 1);
    (overlap, hyp_total, ref_total)
}

/// BLEU score of `hypothesis` against a single `reference`, 0–100.
///
/// Geometric mean of clipped n-gram precisions for n up to
/// `min(4, len(hypothesis), len(reference))`, times the brevity penalty
/// `exp(1 - ref/hyp)` when the hypothesis is shorter than the reference.
/// Empty texts and any zero precision give 0.
pub fn bleu(hypothesis: &str, reference: &str) -> f64 {
    let hyp: Vec<&str> = hypothesis.split_whitespace().collect();
    let reference: Vec<&str> = reference.split_whitespace().collect();
    if hyp.is_empty() || reference.is_empty() {
        return 0.0;
    }
    let max_n = 4.min(hyp.len()).min(reference.len());
    let mut log_precision_sum = 0.0;
    for n in 1..=max_n {
        let (overlap, hyp_total, _) = clipped_overlap(&hyp, &reference, n);
        if overlap == 0 {
            return 0.0;
        }
        log_precision_sum += (overlap as f64 / hyp_total as f64).ln();
    }
    let mean_precision = (log_precision_sum / max_n as f64).exp();
    let brevity = if hyp.len() < reference.len() {
        (1.0 - reference.len() as f64 / hyp.len() as f64).exp()
    } else {
        1.0
    };
    100.0 * brevity * mean_precision
}

/// ROUGE score of `hypothesis` against `reference`, 0–100 each.
pub fn rouge(hypothesis: &str, reference: &str, variant: RougeVariant) -> RougeScore {
    let hyp: Vec<&str> = hypothesis.split_whitespace().collect();
    let reference: Vec<&str> = reference.split_whitespace().collect();
    match variant {
        RougeVariant::Rouge1 => rouge_n(&hyp, &reference, 1),
        RougeVariant::Rouge2 => rouge_n(&hyp, &reference, 2),
        RougeVariant::RougeL => {
            if hyp.is_empty() || reference.is_empty() {
                return RougeScore::ZERO;
            }
            let lcs = lcs_length(&hyp, &reference) as f64;
            RougeScore::from_fractions(lcs / hyp.len() as f64, lcs / reference.len() as f64)
        }
    }
}

fn rouge_n(hyp: &[&str], reference: &[&str], n: usize) -> RougeScore {
    let (overlap, hyp_total, ref_total) = clipped_overlap(hyp, reference, n);
    if hyp_total == 0 || ref_total == 0 {
        return RougeScore::ZERO;
    }
    RougeScore::from_fractions(
        overlap as f64 / hyp_total as f64,
        overlap as f64 / ref_total as f64,
    )
}

/// Classic O(n*m) longest-common-subsequence length at token level.
fn lcs_length(a: &[&str], b: &[&str]) -> usize {
    let mut previous = vec![0usize; b.len() + 1];
    let mut current = vec![0usize; b.len() + 1];
    for &token_a in a {
        for (j, &token_b) in b.iter().enumerate() {
            current[j + 1] = if token_a == token_b {
                previous[j] + 1
            } else {
                previous[j + 1].max(current[j])
            };
        }
        std::mem::swap(&mut previous, &mut current);
    }
    previous[b.len()]
}
