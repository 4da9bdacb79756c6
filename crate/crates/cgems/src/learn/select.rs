//! Feature selection: correlation pruning followed by F-score ranking.

use serde::{Deserialize, Serialize};

use super::matrix::FeatureMatrix;
use super::stats::{anova_f, pearson};
use super::LearnError;

/// Default absolute-correlation threshold for dropping a feature.
pub const CORRELATION_THRESHOLD: f64 = 0.8;

/// F-test score for one surviving feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureScore {
    pub name: String,
    /// Index of the feature in the original column order.
    pub index: usize,
    pub f_statistic: f64,
    pub p_value: f64,
}

/// Everything the selection stage decided, for reporting and reuse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    /// All candidate columns, in input order.
    pub columns: Vec<String>,
    /// Columns dropped because they correlate with an earlier kept column.
    pub pruned: Vec<String>,
    /// Columns surviving the correlation pass, in input order.
    pub kept: Vec<String>,
    /// F-test scores for the kept columns, in input order.
    pub scores: Vec<FeatureScore>,
    /// Final selection, in input order.
    pub selected: Vec<String>,
}

/// Drop every column whose absolute correlation with an earlier kept
/// column reaches `threshold` (keep-first). Returns (kept, pruned)
/// indices, both ascending.
pub fn correlation_prune(matrix: &FeatureMatrix, threshold: f64) -> (Vec<usize>, Vec<usize>) {
    let columns: Vec<Vec<f64>> = (0..matrix.n_columns()).map(|j| matrix.column(j)).collect();
    let mut kept: Vec<usize> = Vec::new();
    let mut pruned: Vec<usize> = Vec::new();
    for j in 0..columns.len() {
        let redundant = kept
            .iter()
            .any(|&i| pearson(&columns[i], &columns[j]).abs() >= threshold);
        if redundant {
            pruned.push(j);
        } else {
            kept.push(j);
        }
    }
    (kept, pruned)
}

/// Among `scores`, pick the `k` highest F statistics. Ties keep the
/// feature that comes first in the original column order. The result
/// is in original column order.
pub fn select_k_best(scores: &[FeatureScore], k: usize) -> Result<Vec<FeatureScore>, LearnError> {
    if k > scores.len() {
        return Err(LearnError::TooManyFeatures { requested: k, available: scores.len() });
    }
    let mut ranked: Vec<&FeatureScore> = scores.iter().collect();
    ranked.sort_by(|a, b| {
        b.f_statistic
            .partial_cmp(&a.f_statistic)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.index.cmp(&b.index))
    });
    let mut chosen: Vec<FeatureScore> = ranked[..k].iter().map(|s| (*s).clone()).collect();
    chosen.sort_by_key(|s| s.index);
    Ok(chosen)
}

/// Run the full selection stage: correlation pruning, then the F-test,
/// then top-k ranking. `k = None` keeps every survivor.
pub fn select_features(
    matrix: &FeatureMatrix,
    threshold: f64,
    k: Option<usize>,
) -> Result<SelectionReport, LearnError> {
    let (kept_idx, pruned_idx) = correlation_prune(matrix, threshold);
    let mut scores = Vec::with_capacity(kept_idx.len());
    for &j in &kept_idx {
        let (f_statistic, p_value) = anova_f(&matrix.column(j), &matrix.labels)?;
        scores.push(FeatureScore {
            name: matrix.columns[j].clone(),
            index: j,
            f_statistic,
            p_value,
        });
    }
    let selected_scores = match k {
        Some(k) => select_k_best(&scores, k)?,
        None => scores.clone(),
    };
    Ok(SelectionReport {
        columns: matrix.columns.clone(),
        pruned: pruned_idx.iter().map(|&j| matrix.columns[j].clone()).collect(),
        kept: kept_idx.iter().map(|&j| matrix.columns[j].clone()).collect(),
        scores,
        selected: selected_scores.into_iter().map(|s| s.name).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(columns: &[&str], rows: Vec<Vec<f64>>, labels: Vec<u8>) -> FeatureMatrix {
        FeatureMatrix::new(columns.iter().map(|s| s.to_string()).collect(), rows, labels)
            .unwrap()
    }

    /// Columns: a, b = 2a (r = 1), c independent, d = -c (r = -1).
    fn correlated_matrix() -> FeatureMatrix {
        let base = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let other = [2.0, 1.0, 4.0, 3.0, 7.0, 5.0];
        let rows = base
            .iter()
            .zip(&other)
            .map(|(&a, &c)| vec![a, 2.0 * a, c, -c])
            .collect();
        matrix(&["a", "b", "c", "d"], rows, vec![0, 0, 0, 1, 1, 1])
    }

    #[test]
    fn prune_keeps_first_of_each_correlated_pair() {
        let m = correlated_matrix();
        let (kept, pruned) = correlation_prune(&m, 0.8);
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(pruned, vec![1, 3]);
    }

    #[test]
    fn prune_threshold_is_inclusive() {
        // x and y have |r| = 0.8 exactly: x = [-1,0,1], y chosen so that
        // cov = 0.8 * sx * sy. With y = [-1, 0.5, 0.5]: mean 0, cov = (1 + 0 + 0.5)/3
        // Simpler: test at threshold 1.0 with an exact copy.
        let rows = vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0], vec![4.0, 4.0]];
        let m = matrix(&["x", "copy"], rows, vec![0, 0, 1, 1]);
        let (kept, pruned) = correlation_prune(&m, 1.0);
        assert_eq!(kept, vec![0]);
        assert_eq!(pruned, vec![1]);
    }

    #[test]
    fn constant_columns_are_never_pruned() {
        let rows = vec![vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 3.0], vec![5.0, 4.0]];
        let m = matrix(&["const", "x"], rows, vec![0, 0, 1, 1]);
        let (kept, pruned) = correlation_prune(&m, 0.8);
        assert_eq!(kept, vec![0, 1]);
        assert!(pruned.is_empty());
    }

    #[test]
    fn select_k_best_ranks_by_f_then_column_order() {
        let score = |name: &str, index: usize, f: f64| FeatureScore {
            name: name.to_string(),
            index,
            f_statistic: f,
            p_value: 0.5,
        };
        let scores =
            vec![score("a", 0, 2.0), score("b", 1, 9.0), score("c", 2, 2.0), score("d", 3, 5.0)];
        let top = select_k_best(&scores, 3).unwrap();
        let names: Vec<&str> = top.iter().map(|s| s.name.as_str()).collect();
        // b (9) and d (5) win outright; the 2.0 tie goes to "a" (earlier
        // column). Output preserves column order.
        assert_eq!(names, vec!["a", "b", "d"]);
        assert!(matches!(
            select_k_best(&scores, 5),
            Err(LearnError::TooManyFeatures { requested: 5, available: 4 })
        ));
    }

    #[test]
    fn full_stage_reports_every_decision() {
        let m = correlated_matrix();
        let report = select_features(&m, 0.8, Some(1)).unwrap();
        assert_eq!(report.kept, vec!["a", "c"]);
        assert_eq!(report.pruned, vec!["b", "d"]);
        assert_eq!(report.scores.len(), 2);
        assert_eq!(report.selected.len(), 1);
        // "a" separates the classes far better than "c".
        assert_eq!(report.selected, vec!["a"]);
        let f_a = report.scores[0].f_statistic;
        let f_c = report.scores[1].f_statistic;
        assert!(f_a > f_c, "{f_a} vs {f_c}");
    }

    #[test]
    fn none_keeps_all_survivors() {
        let m = correlated_matrix();
        let report = select_features(&m, 0.8, None).unwrap();
        assert_eq!(report.selected, report.kept);
    }

    #[test]
    fn threshold_extremes() {
        let m = correlated_matrix();
        // Above 1.0 nothing can correlate hard enough: all kept.
        let (kept, pruned) = correlation_prune(&m, 1.0 + 1e-9);
        assert_eq!(kept.len(), 4);
        assert!(pruned.is_empty());
        // At 0 every |r| qualifies: only the first column survives.
        let (kept, pruned) = correlation_prune(&m, 0.0);
        assert_eq!(kept, vec![0]);
        assert_eq!(pruned, vec![1, 2, 3]);
    }

    #[test]
    fn top_k_is_a_prefix_chain() {
        // selected(k) must be a subset of selected(k + 1).
        let mut rows = Vec::new();
        for i in 0..12 {
            let v = i as f64;
            rows.push(vec![v, (v * 37.0) % 5.0, 11.0 - v, (v * v) % 7.0, 3.0]);
        }
        let labels = vec![0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1];
        let m = matrix(&["a", "b", "c", "d", "e"], rows, labels);
        let report = select_features(&m, 2.0, None).unwrap();
        let mut previous: Vec<String> = Vec::new();
        for k in 1..=report.scores.len() {
            let chosen: Vec<String> = select_k_best(&report.scores, k)
                .unwrap()
                .into_iter()
                .map(|s| s.name)
                .collect();
            assert_eq!(chosen.len(), k);
            for name in &previous {
                assert!(chosen.contains(name), "k={k} lost {name}");
            }
            previous = chosen;
        }
    }
}
