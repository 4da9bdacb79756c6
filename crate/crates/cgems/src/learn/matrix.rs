//! Labelled feature matrices, standardization, and stratified splits.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::LearnError;
use crate::dataset::{schema, FeatureRecord};

/// A dense row-major matrix of feature values with one label per row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    /// Column names, in order.
    pub columns: Vec<String>,
    /// One row per observation; every row has `columns.len()` values.
    pub rows: Vec<Vec<f64>>,
    /// Binary class label per row.
    pub labels: Vec<u8>,
}

impl FeatureMatrix {
    pub fn new(
        columns: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<u8>,
    ) -> Result<FeatureMatrix, LearnError> {
        let matrix = FeatureMatrix { columns, rows, labels };
        matrix.validate()?;
        Ok(matrix)
    }

    /// Build a matrix from collected records; every record must be labelled.
    pub fn from_records(records: &[FeatureRecord]) -> Result<FeatureMatrix, LearnError> {
        let columns: Vec<String> = schema::FEATURES.iter().map(|s| s.to_string()).collect();
        let mut rows = Vec::with_capacity(records.len());
        let mut labels = Vec::with_capacity(records.len());
        for record in records {
            let label = record
                .label
                .ok_or_else(|| LearnError::Unlabelled(record.program.clone()))?;
            rows.push(record.values.to_vec());
            labels.push(label);
        }
        FeatureMatrix::new(columns, rows, labels)
    }

    fn validate(&self) -> Result<(), LearnError> {
        if self.rows.is_empty() {
            return Err(LearnError::Empty);
        }
        if self.labels.len() != self.rows.len() {
            return Err(LearnError::LengthMismatch(self.rows.len(), self.labels.len()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(LearnError::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: self.columns.len(),
                });
            }
        }
        for &label in &self.labels {
            if label > 1 {
                return Err(LearnError::BadLabel(label));
            }
        }
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    /// Values of one column, top to bottom.
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.rows.iter().map(|row| row[index]).collect()
    }

    /// Matrix restricted to the named columns, in the order given.
    pub fn subset(&self, names: &[String]) -> Result<FeatureMatrix, LearnError> {
        let mut indices = Vec::with_capacity(names.len());
        for name in names {
            let index = self
                .columns
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| LearnError::UnknownColumn(name.clone()))?;
            indices.push(index);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| indices.iter().map(|&i| row[i]).collect())
            .collect();
        Ok(FeatureMatrix { columns: names.to_vec(), rows, labels: self.labels.clone() })
    }

    /// Matrix restricted to the given row indices, in the order given.
    pub fn take_rows(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            columns: self.columns.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

/// Per-column location/scale parameters fitted on training data.
///
/// Scale is the population standard deviation (divide by `n`, not `n - 1`).
/// Columns with zero variance are flagged and transform to zero rather
/// than dividing by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardization {
    pub columns: Vec<String>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub zero_variance: Vec<bool>,
}

impl Standardization {
    pub fn fit(matrix: &FeatureMatrix) -> Standardization {
        let n = matrix.n_rows() as f64;
        let mut means = Vec::with_capacity(matrix.n_columns());
        let mut stds = Vec::with_capacity(matrix.n_columns());
        let mut zero_variance = Vec::with_capacity(matrix.n_columns());
        for j in 0..matrix.n_columns() {
            let mean = matrix.rows.iter().map(|r| r[j]).sum::<f64>() / n;
            let var = matrix.rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
            let std = var.sqrt();
            means.push(mean);
            stds.push(std);
            zero_variance.push(std == 0.0);
        }
        Standardization { columns: matrix.columns.clone(), means, stds, zero_variance }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(&x, (&mean, &std))| if std == 0.0 { 0.0 } else { (x - mean) / std })
            .collect()
    }

    pub fn apply(&self, matrix: &FeatureMatrix) -> Result<FeatureMatrix, LearnError> {
        if matrix.columns != self.columns {
            return Err(LearnError::Insufficient(
                "matrix columns do not match the fitted standardization".to_string(),
            ));
        }
        let rows = matrix.rows.iter().map(|row| self.transform_row(row)).collect();
        FeatureMatrix::new(matrix.columns.clone(), rows, matrix.labels.clone())
    }

    /// Parameters restricted to the named columns, in the order given.
    pub fn subset(&self, names: &[String]) -> Result<Standardization, LearnError> {
        let mut out = Standardization {
            columns: Vec::new(),
            means: Vec::new(),
            stds: Vec::new(),
            zero_variance: Vec::new(),
        };
        for name in names {
            let index = self
                .columns
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| LearnError::UnknownColumn(name.clone()))?;
            out.columns.push(name.clone());
            out.means.push(self.means[index]);
            out.stds.push(self.stds[index]);
            out.zero_variance.push(self.zero_variance[index]);
        }
        Ok(out)
    }
}

/// Split row indices into train/test sets with class proportions preserved.
///
/// Per-class train counts follow largest-remainder rounding of the exact
/// quota `train_n * class_count / total`; membership within a class is
/// chosen by a seeded shuffle. Returned index lists are sorted ascending.
pub fn stratified_split(
    labels: &[u8],
    train_n: usize,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), LearnError> {
    let total = labels.len();
    if train_n == 0 || train_n >= total {
        return Err(LearnError::BadSplit { train: train_n, total });
    }
    let mut by_class: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (i, &label) in labels.iter().enumerate() {
        if label > 1 {
            return Err(LearnError::BadLabel(label));
        }
        by_class.entry(label).or_default().push(i);
    }

    let mut quotas: Vec<(u8, usize, f64)> = by_class
        .iter()
        .map(|(&label, members)| {
            let exact = train_n as f64 * members.len() as f64 / total as f64;
            (label, exact.floor() as usize, exact - exact.floor())
        })
        .collect();
    let mut assigned: usize = quotas.iter().map(|&(_, base, _)| base).sum();
    // Hand out the leftover seats by largest fractional part, preferring
    // the smaller class label on ties.
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|&a, &b| {
        quotas[b].2.partial_cmp(&quotas[a].2).unwrap().then(quotas[a].0.cmp(&quotas[b].0))
    });
    let mut cursor = 0;
    while assigned < train_n {
        let slot = order[cursor % order.len()];
        let capacity = by_class[&quotas[slot].0].len();
        if quotas[slot].1 < capacity {
            quotas[slot].1 += 1;
            assigned += 1;
        }
        cursor += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::with_capacity(train_n);
    let mut test = Vec::with_capacity(total - train_n);
    for (label, take, _) in quotas {
        let mut members = by_class[&label].clone();
        members.shuffle(&mut rng);
        train.extend_from_slice(&members[..take]);
        test.extend_from_slice(&members[take..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}
