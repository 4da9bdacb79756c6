//! Bag-of-words vector similarity, reported as angles.
//!
//! Both texts are projected onto a shared vocabulary (distinct whitespace
//! tokens in first-appearance order) as term-count vectors. The cosine
//! similarity `k` of the two vectors is reported as the angle
//! `acos(k)` in degrees, so 0° means identical term distributions and 90°
//! means no shared terms.
//!
//! The soft variant additionally credits *near*-matching terms through a
//! term-similarity matrix `S`: `s_ij` is the squared normalised
//! Levenshtein similarity of terms `i` and `j`, floored to 0 below 0.5 so
//! unrelated terms cannot accumulate credit. The angle then comes from
//! the S-weighted inner products.

use serde::{Deserialize, Serialize};

/// Two texts projected onto their shared vocabulary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocVector {
    /// Distinct terms of both texts in first-appearance order (first
    /// text's terms first).
    pub vocabulary: Vec<String>,
    /// Term counts of the first text.
    pub counts_a: Vec<f64>,
    /// Term counts of the second text.
    pub counts_b: Vec<f64>,
}

/// Build the shared-vocabulary count vectors of two texts.
pub fn doc_vector(a: &str, b: &str) -> DocVector {
    let mut vocabulary: Vec<String> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for token in a.split_whitespace().chain(b.split_whitespace()) {
        if !index.contains_key(token) {
            index.insert(token.to_string(), vocabulary.len());
            vocabulary.push(token.to_string());
        }
    }
    let mut counts_a = vec![0.0; vocabulary.len()];
    let mut counts_b = vec![0.0; vocabulary.len()];
    for token in a.split_whitespace() {
        counts_a[index[token]] += 1.0;
    }
    for token in b.split_whitespace() {
        counts_b[index[token]] += 1.0;
    }
    DocVector { vocabulary, counts_a, counts_b }
}

/// Cosine angle between the term-count vectors, in degrees `[0, 90]`.
/// Either text being empty (a zero vector) gives 90.
pub fn cosine_angle(a: &str, b: &str) -> f64 {
    let v = doc_vector(a, b);
    let dot: f64 = v.counts_a.iter().zip(&v.counts_b).map(|(x, y)| x * y).sum();
    let norm_a: f64 = v.counts_a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norm_b: f64 = v.counts_b.iter().map(|y| y * y).sum::<f64>().sqrt();
    angle_from_similarity(dot, norm_a * norm_b)
}

/// Soft-cosine angle between the term-count vectors, in degrees `[0, 90]`.
pub fn soft_cosine_angle(a: &str, b: &str) -> f64 {
    let v = doc_vector(a, b);
    let n = v.vocabulary.len();
    let mut s = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        s[i][i] = 1.0;
        for j in i + 1..n {
            let value = term_similarity(&v.vocabulary[i], &v.vocabulary[j]);
            s[i][j] = value;
            s[j][i] = value;
        }
    }
    let weighted = |x: &[f64], y: &[f64]| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                sum += x[i] * s[i][j] * y[j];
            }
        }
        sum
    };
    let dot = weighted(&v.counts_a, &v.counts_b);
    let norm_a = weighted(&v.counts_a, &v.counts_a).max(0.0).sqrt();
    let norm_b = weighted(&v.counts_b, &v.counts_b).max(0.0).sqrt();
    angle_from_similarity(dot, norm_a * norm_b)
}

fn angle_from_similarity(dot: f64, denominator: f64) -> f64 {
    if denominator <= 0.0 {
        return 90.0;
    }
    let k = (dot / denominator).clamp(0.0, 1.0);
    k.acos().to_degrees()
}

/// Squared, thresholded Levenshtein similarity of two terms: 1 for equal
/// terms, otherwise `max(0, 1 - lev/max_len)^2`, zeroed below 0.5.
fn term_similarity(a: &str, b: &str) -> f64 {
    if a == b {
        return 1.0;
    }
    let max_len = a.chars().count().max(b.chars().count());
    if max_len == 0 {
        return 1.0;
    }
    let raw = 1.0 - levenshtein(a, b) as f64 / max_len as f64;
    let squared = raw.max(0.0).powi(2);
    if squared < 0.5 {
        0.0
    } else {
        squared
    }
}

/// Classic single-row Levenshtein distance over characters.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let substitute = diagonal + usize::from(ca != cb);
            diagonal = row[j + 1];
            row[j + 1] = substitute.min(row[j + 1] + 1).min(row[j] + 1);
        }
    }
    row[b.len()]
}


#[cfg(test)]
mod property_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn levenshtein_is_a_metric(
            a in "[ab]{0,8}",
            b in "[ab]{0,8}",
            c in "[ab]{0,8}",
        ) {
            let ab = levenshtein(&a, &b);
            let ba = levenshtein(&b, &a);
            prop_assert_eq!(ab, ba);
            prop_assert_eq!(levenshtein(&a, &a), 0);
            // Triangle inequality.
            prop_assert!(ab <= levenshtein(&a, &c) + levenshtein(&c, &b));
        }

        #[test]
        fn cosine_angle_is_symmetric_and_bounded(
            a in "[a-c ]{0,20}",
            b in "[a-c ]{0,20}",
        ) {
            let left = cosine_angle(&a, &b);
            let right = cosine_angle(&b, &a);
            prop_assert!((left - right).abs() < 1e-9);
            prop_assert!((0.0..=90.0).contains(&left));
        }
    }
}
