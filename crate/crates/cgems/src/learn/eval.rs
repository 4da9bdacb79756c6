//! Binary classification evaluation: confusion matrix and the usual
//! derived rates, with class 1 as the positive class.

use serde::{Deserialize, Serialize};

use super::LearnError;

/// Confusion counts plus derived rates. Rates are fractions in [0, 1];
/// multiply by 100 for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
    /// Correct predictions over all predictions.
    pub accuracy: f64,
    /// TP / (TP + FP); 0 when nothing was predicted positive.
    pub precision: f64,
    /// TP / (TP + FN); 0 when nothing is actually positive.
    pub recall: f64,
    /// Harmonic mean of precision and recall.
    pub f1: f64,
    /// The inputs the report was computed from, for audit.
    pub predicted: Vec<u8>,
    pub actual: Vec<u8>,
}

impl EvalReport {
    pub fn total(&self) -> usize {
        self.true_positives + self.false_positives + self.false_negatives + self.true_negatives
    }

    /// Number of wrong predictions.
    pub fn misclassifications(&self) -> usize {
        self.false_positives + self.false_negatives
    }

    /// Accuracy as a percentage rounded to two decimals, as usually
    /// quoted in reports.
    pub fn accuracy_percent(&self) -> f64 {
        (self.accuracy * 10000.0).round() / 100.0
    }
}

/// Score predictions against ground truth.
pub fn evaluate(predicted: &[u8], actual: &[u8]) -> Result<EvalReport, LearnError> {
    if predicted.len() != actual.len() {
        return Err(LearnError::LengthMismatch(predicted.len(), actual.len()));
    }
    if predicted.is_empty() {
        return Err(LearnError::Empty);
    }
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut fn_ = 0usize;
    let mut tn = 0usize;
    for (&p, &a) in predicted.iter().zip(actual) {
        if p > 1 {
            return Err(LearnError::BadLabel(p));
        }
        if a > 1 {
            return Err(LearnError::BadLabel(a));
        }
        match (p, a) {
            (1, 1) => tp += 1,
            (1, 0) => fp += 1,
            (0, 1) => fn_ += 1,
            _ => tn += 1,
        }
    }
    let rate = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let precision = rate(tp, tp + fp);
    let recall = rate(tp, tp + fn_);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(EvalReport {
        true_positives: tp,
        false_positives: fp,
        false_negatives: fn_,
        true_negatives: tn,
        accuracy: rate(tp + tn, predicted.len()),
        precision,
        recall,
        f1,
        predicted: predicted.to_vec(),
        actual: actual.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn counts_every_confusion_cell() {
        let predicted = [1, 1, 0, 0, 1];
        let actual = [1, 0, 1, 0, 1];
        let report = evaluate(&predicted, &actual).unwrap();
        assert_eq!(report.true_positives, 2);
        assert_eq!(report.false_positives, 1);
        assert_eq!(report.false_negatives, 1);
        assert_eq!(report.true_negatives, 1);
        assert_eq!(report.total(), 5);
        assert_eq!(report.misclassifications(), 2);
        assert_relative_eq!(report.accuracy, 0.6);
        assert_relative_eq!(report.precision, 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(report.recall, 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(report.f1, 2.0 / 3.0, max_relative = 1e-12);
        assert_eq!(report.predicted, predicted);
        assert_eq!(report.actual, actual);
    }

    #[test]
    fn perfect_and_degenerate_predictions() {
        let report = evaluate(&[1, 0, 1], &[1, 0, 1]).unwrap();
        assert_eq!(report.accuracy, 1.0);
        assert_eq!(report.f1, 1.0);
        assert_eq!(report.accuracy_percent(), 100.0);

        // All-negative predictions on all-negative truth: no positives
        // anywhere, so precision and recall fall back to zero.
        let report = evaluate(&[0, 0], &[0, 0]).unwrap();
        assert_eq!(report.accuracy, 1.0);
        assert_eq!(report.precision, 0.0);
        assert_eq!(report.recall, 0.0);
        assert_eq!(report.f1, 0.0);
    }

    #[test]
    fn percent_rounding_is_two_decimals() {
        // 8/13 = 0.615384... -> 61.54%.
        let predicted: Vec<u8> = vec![1; 8].into_iter().chain(vec![0; 5]).collect();
        let actual: Vec<u8> = vec![1; 8].into_iter().chain(vec![1; 5]).collect();
        let report = evaluate(&predicted, &actual).unwrap();
        assert_eq!(report.accuracy_percent(), 61.54);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(evaluate(&[1], &[1, 0]), Err(LearnError::LengthMismatch(1, 2))));
        assert!(matches!(evaluate(&[], &[]), Err(LearnError::Empty)));
        assert!(matches!(evaluate(&[2], &[0]), Err(LearnError::BadLabel(2))));
    }
}
