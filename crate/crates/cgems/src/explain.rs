//! Local model explanations in the LIME style.
//!
//! To explain one prediction, the input is perturbed with unit Gaussian
//! noise, the model is queried at each perturbation, and a weighted
//! linear surrogate is fitted with sample weights that decay with
//! distance from the original input. The surrogate's coefficients rank
//! feature influence near that point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Settings for one explanation.
#[derive(Debug, Clone, PartialEq)]
pub struct LimeParams {
    /// Number of perturbed samples to draw.
    pub n_samples: usize,
    /// Kernel width for the locality weights; `None` uses
    /// `0.75 * sqrt(d)` for `d` features.
    pub kernel_width: Option<f64>,
    pub seed: u64,
}

impl Default for LimeParams {
    fn default() -> LimeParams {
        LimeParams { n_samples: 5000, kernel_width: None, seed: 0 }
    }
}

/// Fitted surrogate around one input.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Explanation {
    /// One coefficient per input feature, in the model's feature order.
    pub weights: Vec<f64>,
    pub intercept: f64,
    /// Weighted coefficient of determination of the surrogate fit.
    pub r_squared: f64,
    /// Kernel width actually used.
    pub kernel_width: f64,
    /// True when the normal equations were singular and a small ridge
    /// term was added to solve them.
    pub ridged: bool,
    /// Settings the explanation was produced with, for audit.
    pub n_samples: usize,
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum ExplainError {
    #[error("cannot explain an empty input")]
    EmptyInput,
    #[error("need at least {needed} samples to fit {dims} coefficients, got {got}")]
    TooFewSamples { needed: usize, dims: usize, got: usize },
    #[error("kernel width must be positive, got {0}")]
    BadKernelWidth(f64),
    #[error("surrogate system is singular even with ridge regularization")]
    Singular,
}

/// Explain `predict` near `x` with a weighted linear surrogate.
///
/// `predict` maps a feature vector to the scalar being explained
/// (typically the probability of the positive class). Perturbations are
/// drawn coordinate-wise from a unit-variance Gaussian centred on `x`,
/// and sample `z` receives weight `exp(-|z - x|^2 / width^2)`.
pub fn lime_explain<F>(
    predict: F,
    x: &[f64],
    params: &LimeParams,
) -> Result<Explanation, ExplainError>
where
    F: Fn(&[f64]) -> f64,
{
    let dims = x.len();
    if dims == 0 {
        return Err(ExplainError::EmptyInput);
    }
    // Intercept plus one coefficient per feature, and at least one
    // spare sample so the fit is overdetermined.
    let needed = dims + 2;
    if params.n_samples < needed {
        return Err(ExplainError::TooFewSamples { needed, dims, got: params.n_samples });
    }
    let width = params.kernel_width.unwrap_or(0.75 * (dims as f64).sqrt());
    if !(width > 0.0) {
        return Err(ExplainError::BadKernelWidth(width));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut samples = Vec::with_capacity(params.n_samples);
    let mut outputs = Vec::with_capacity(params.n_samples);
    let mut weights = Vec::with_capacity(params.n_samples);
    for _ in 0..params.n_samples {
        let z: Vec<f64> = x.iter().map(|&v| v + rng.sample::<f64, _>(StandardNormal)).collect();
        let dist_sq: f64 = z.iter().zip(x).map(|(&a, &b)| (a - b) * (a - b)).sum();
        weights.push((-dist_sq / (width * width)).exp());
        outputs.push(predict(&z));
        samples.push(z);
    }

    let (beta, ridged) = fit_weighted_linear(&samples, &outputs, &weights)?;
    let r_squared = weighted_r_squared(&samples, &outputs, &weights, &beta);

    Ok(Explanation {
        weights: beta[1..].to_vec(),
        intercept: beta[0],
        r_squared,
        kernel_width: width,
        ridged,
        n_samples: params.n_samples,
        seed: params.seed,
    })
}

fn design(sample: &[f64], j: usize) -> f64 {
    if j == 0 {
        1.0
    } else {
        sample[j - 1]
    }
}

/// Weighted least squares for [intercept, coefficients] via the normal
/// equations; falls back to a small ridge term when they are singular.
fn fit_weighted_linear(
    samples: &[Vec<f64>],
    outputs: &[f64],
    weights: &[f64],
) -> Result<(Vec<f64>, bool), ExplainError> {
    let cols = samples[0].len() + 1;
    let mut gram = vec![vec![0.0; cols]; cols];
    let mut moment = vec![0.0; cols];
    for ((z, &y), &w) in samples.iter().zip(outputs).zip(weights) {
        for i in 0..cols {
            let di = design(z, i) * w;
            moment[i] += di * y;
            for j in i..cols {
                gram[i][j] += di * design(z, j);
            }
        }
    }
    for i in 0..cols {
        for j in 0..i {
            gram[i][j] = gram[j][i];
        }
    }
    match solve(gram.clone(), moment.clone()) {
        Some(beta) => Ok((beta, false)),
        None => {
            for (i, row) in gram.iter_mut().enumerate() {
                row[i] += 1e-6;
            }
            Ok((solve(gram, moment).ok_or(ExplainError::Singular)?, true))
        }
    }
}

/// Weighted R^2 of the surrogate against the model outputs.
fn weighted_r_squared(
    samples: &[Vec<f64>],
    outputs: &[f64],
    weights: &[f64],
    beta: &[f64],
) -> f64 {
    let weight_sum: f64 = weights.iter().sum();
    let y_bar = if weight_sum > 0.0 {
        outputs.iter().zip(weights).map(|(&y, &w)| w * y).sum::<f64>() / weight_sum
    } else {
        0.0
    };
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let mut y_scale = 0.0;
    for ((z, &y), &w) in samples.iter().zip(outputs).zip(weights) {
        let fitted: f64 = (0..beta.len()).map(|j| beta[j] * design(z, j)).sum();
        ss_res += w * (y - fitted) * (y - fitted);
        ss_tot += w * (y - y_bar) * (y - y_bar);
        y_scale += w * y * y;
    }
    // A flat response makes both sums rounding noise; call an exact fit
    // perfect rather than dividing the two noise terms.
    let degenerate = 1e-12 * y_scale.max(1e-300);
    if ss_tot <= degenerate {
        if ss_res <= degenerate {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot_row][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}
