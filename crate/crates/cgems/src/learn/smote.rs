//! Synthetic minority oversampling.
//!
//! New minority rows are drawn on the segments between existing minority
//! rows and their nearest minority neighbours, which balances the classes
//! without duplicating points outright.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::FeatureMatrix;
use super::LearnError;

/// Default number of nearest neighbours considered per minority row.
pub const DEFAULT_NEIGHBOURS: usize = 5;

/// Balance the classes by appending synthetic minority rows.
///
/// Each synthetic row is `x + u * (neighbour - x)` for a seeded-random
/// minority row `x`, one of its `k_neighbours` nearest minority
/// neighbours (Euclidean distance, capped at `minority - 1`), and `u`
/// uniform on [0, 1). Exactly `majority - minority` rows are appended
/// after the originals; an already balanced matrix comes back unchanged.
pub fn oversample(
    matrix: &FeatureMatrix,
    k_neighbours: usize,
    seed: u64,
) -> Result<FeatureMatrix, LearnError> {
    if k_neighbours == 0 {
        return Err(LearnError::Insufficient(
            "oversampling needs at least one neighbour".to_string(),
        ));
    }
    let zeros: Vec<usize> =
        (0..matrix.n_rows()).filter(|&i| matrix.labels[i] == 0).collect();
    let ones: Vec<usize> = (0..matrix.n_rows()).filter(|&i| matrix.labels[i] == 1).collect();
    if zeros.is_empty() || ones.is_empty() {
        return Err(LearnError::SingleClass);
    }
    if zeros.len() == ones.len() {
        return Ok(matrix.clone());
    }
    let (minority, minority_label, majority_count) = if zeros.len() < ones.len() {
        (&zeros, 0u8, ones.len())
    } else {
        (&ones, 1u8, zeros.len())
    };
    if minority.len() < 2 {
        return Err(LearnError::TooFewMinority(minority.len()));
    }

    let k = k_neighbours.min(minority.len() - 1);
    // k nearest minority neighbours of each minority row, self excluded,
    // distance ties broken by row order.
    let neighbours: Vec<Vec<usize>> = minority
        .iter()
        .map(|&i| {
            let mut candidates: Vec<(f64, usize)> = minority
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| (distance(&matrix.rows[i], &matrix.rows[j]), j))
                .collect();
            candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
            candidates.truncate(k);
            candidates.into_iter().map(|(_, j)| j).collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = matrix.clone();
    let needed = majority_count - minority.len();
    for _ in 0..needed {
        let pick = rng.gen_range(0..minority.len());
        let base = &matrix.rows[minority[pick]];
        let neighbour = &matrix.rows[neighbours[pick][rng.gen_range(0..k)]];
        let u: f64 = rng.gen();
        let row: Vec<f64> =
            base.iter().zip(neighbour).map(|(&a, &b)| a + u * (b - a)).collect();
        out.rows.push(row);
        out.labels.push(minority_label);
    }
    Ok(out)
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: Vec<Vec<f64>>, labels: Vec<u8>) -> FeatureMatrix {
        let columns = (0..rows[0].len()).map(|i| format!("f{i}")).collect();
        FeatureMatrix::new(columns, rows, labels).unwrap()
    }

    fn unbalanced() -> FeatureMatrix {
        // 6 majority zeros far away, 3 minority ones in a cluster.
        matrix(
            vec![
                vec![10.0, 10.0],
                vec![11.0, 10.0],
                vec![10.0, 11.0],
                vec![12.0, 12.0],
                vec![11.0, 12.0],
                vec![12.0, 10.0],
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
            ],
            vec![0, 0, 0, 0, 0, 0, 1, 1, 1],
        )
    }

    #[test]
    fn balances_exactly_and_keeps_originals_first() {
        let m = unbalanced();
        let out = oversample(&m, DEFAULT_NEIGHBOURS, 17).unwrap();
        assert_eq!(out.n_rows(), 12);
        assert_eq!(out.rows[..9], m.rows[..]);
        assert_eq!(out.labels[..9], m.labels[..]);
        let ones = out.labels.iter().filter(|&&l| l == 1).count();
        assert_eq!(ones, 6);
        assert!(out.labels[9..].iter().all(|&l| l == 1));
    }

    #[test]
    fn synthetics_lie_on_segments_between_minority_rows() {
        let m = unbalanced();
        let out = oversample(&m, DEFAULT_NEIGHBOURS, 5).unwrap();
        let minority: Vec<&Vec<f64>> = m.rows[6..].iter().collect();
        for row in &out.rows[9..] {
            // Some pair (a, b) of minority rows and u in [0, 1] must
            // reproduce the synthetic row exactly.
            let on_a_segment = minority.iter().enumerate().any(|(i, a)| {
                minority.iter().enumerate().any(|(j, b)| {
                    if i == j {
                        return false;
                    }
                    let span = b[0] - a[0];
                    let u = if span != 0.0 {
                        (row[0] - a[0]) / span
                    } else if b[1] != a[1] {
                        (row[1] - a[1]) / (b[1] - a[1])
                    } else {
                        return false;
                    };
                    (0.0..=1.0).contains(&u)
                        && (a[0] + u * (b[0] - a[0]) - row[0]).abs() < 1e-12
                        && (a[1] + u * (b[1] - a[1]) - row[1]).abs() < 1e-12
                })
            });
            assert!(on_a_segment, "row {row:?} is not between minority rows");
        }
    }

    #[test]
    fn oversampling_is_seed_deterministic() {
        let m = unbalanced();
        let a = oversample(&m, DEFAULT_NEIGHBOURS, 99).unwrap();
        let b = oversample(&m, DEFAULT_NEIGHBOURS, 99).unwrap();
        let c = oversample(&m, DEFAULT_NEIGHBOURS, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.rows, c.rows);
    }

    #[test]
    fn neighbour_count_is_validated_and_capped() {
        let m = unbalanced();
        assert!(oversample(&m, 0, 1).is_err());
        // A request beyond minority - 1 caps instead of failing.
        let out = oversample(&m, 50, 1).unwrap();
        assert_eq!(out.n_rows(), 12);
    }

    #[test]
    fn balanced_input_is_returned_unchanged() {
        let m = matrix(
            vec![vec![0.0], vec![1.0], vec![10.0], vec![11.0]],
            vec![0, 0, 1, 1],
        );
        assert_eq!(oversample(&m, DEFAULT_NEIGHBOURS, 1).unwrap(), m);
    }

    #[test]
    fn minority_of_one_is_rejected() {
        let m = matrix(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0, 0, 1]);
        assert!(matches!(oversample(&m, DEFAULT_NEIGHBOURS, 1), Err(LearnError::TooFewMinority(1))));
    }

    #[test]
    fn single_class_is_rejected() {
        let m = matrix(vec![vec![0.0], vec![1.0]], vec![0, 0]);
        assert!(matches!(oversample(&m, DEFAULT_NEIGHBOURS, 1), Err(LearnError::SingleClass)));
    }

    #[test]
    fn zero_label_minority_is_supported() {
        let m = matrix(
            vec![vec![0.0], vec![0.5], vec![10.0], vec![11.0], vec![12.0]],
            vec![0, 0, 1, 1, 1],
        );
        let out = oversample(&m, DEFAULT_NEIGHBOURS, 4).unwrap();
        assert_eq!(out.n_rows(), 6);
        assert_eq!(out.labels[5], 0);
        // Synthetic zero lies between the two zero-label rows.
        let v = out.rows[5][0];
        assert!((0.0..=0.5).contains(&v), "got {v}");
    }
}
