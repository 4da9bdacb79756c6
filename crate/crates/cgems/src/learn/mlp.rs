//! A small fully connected classifier, written out by hand.
//!
//! Architecture: dense layers with ReLU activations and a two-unit
//! softmax head, trained with full-batch Adam on the mean negative
//! log-likelihood of the true class. Weight initialization and training
//! are deterministic for a given seed, so retraining on identical input
//! reproduces the model bit for bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LearnError;

/// Training hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpConfig {
    /// Hidden layer widths, input to output.
    pub hidden: Vec<usize>,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub epochs: usize,
}

impl Default for MlpConfig {
    fn default() -> MlpConfig {
        MlpConfig {
            hidden: vec![14, 12],
            learning_rate: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            epochs: 1000,
        }
    }
}

/// Loss and training accuracy per epoch, recorded before each update.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTrace {
    pub losses: Vec<f64>,
    pub accuracies: Vec<f64>,
}

impl TrainTrace {
    pub fn final_loss(&self) -> f64 {
        self.losses.last().copied().unwrap_or(f64::NAN)
    }

    pub fn final_accuracy(&self) -> f64 {
        self.accuracies.last().copied().unwrap_or(f64::NAN)
    }
}

/// Intermediate values of one forward pass, kept for backpropagation
/// and for derivative checks in tests.
#[derive(Debug, Clone)]
pub struct Forward {
    /// Pre-activation sums per layer (input layer excluded).
    pub sums: Vec<Vec<f64>>,
    /// Activations per layer; first is the input, last the class
    /// probabilities.
    pub activations: Vec<Vec<f64>>,
}

/// Gradients with the same shapes as the weights and biases.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub weights: Vec<Vec<Vec<f64>>>,
    pub biases: Vec<Vec<f64>>,
}

/// The classifier itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    /// Unit counts per layer, input first, two output units last.
    pub layer_sizes: Vec<usize>,
    /// `weights[l][out][in]` connects layer `l` to layer `l + 1`.
    pub weights: Vec<Vec<Vec<f64>>>,
    pub biases: Vec<Vec<f64>>,
    pub config: MlpConfig,
    pub seed: u64,
}

impl MlpModel {
    /// Fresh network with seeded initial weights and zero biases.
    ///
    /// Hidden layers draw uniformly from ±sqrt(6 / fan_in); the output
    /// layer from ±sqrt(6 / (fan_in + fan_out)). Draws happen layer by
    /// layer, output unit by output unit, input by input, so a seed
    /// pins every coefficient.
    pub fn new(input_dim: usize, config: MlpConfig, seed: u64) -> Result<MlpModel, LearnError> {
        if input_dim == 0 {
            return Err(LearnError::Insufficient(
                "network needs at least one input feature".to_string(),
            ));
        }
        if config.hidden.iter().any(|&w| w == 0) {
            return Err(LearnError::Insufficient(
                "hidden layers need at least one unit".to_string(),
            ));
        }
        let mut layer_sizes = vec![input_dim];
        layer_sizes.extend_from_slice(&config.hidden);
        layer_sizes.push(2);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights = Vec::with_capacity(layer_sizes.len() - 1);
        let mut biases = Vec::with_capacity(layer_sizes.len() - 1);
        for l in 0..layer_sizes.len() - 1 {
            let fan_in = layer_sizes[l] as f64;
            let fan_out = layer_sizes[l + 1] as f64;
            let output_layer = l == layer_sizes.len() - 2;
            let limit = if output_layer {
                (6.0 / (fan_in + fan_out)).sqrt()
            } else {
                (6.0 / fan_in).sqrt()
            };
            let layer: Vec<Vec<f64>> = (0..layer_sizes[l + 1])
                .map(|_| (0..layer_sizes[l]).map(|_| rng.gen_range(-limit..limit)).collect())
                .collect();
            weights.push(layer);
            biases.push(vec![0.0; layer_sizes[l + 1]]);
        }
        Ok(MlpModel { layer_sizes, weights, biases, config, seed })
    }

    pub fn input_dim(&self) -> usize {
        self.layer_sizes[0]
    }

    /// Run one input through the network, keeping intermediates.
    pub fn forward(&self, x: &[f64]) -> Forward {
        assert_eq!(x.len(), self.input_dim(), "input width mismatch");
        let mut sums = Vec::with_capacity(self.weights.len());
        let mut activations = vec![x.to_vec()];
        for (l, (weights, biases)) in self.weights.iter().zip(&self.biases).enumerate() {
            let input = activations.last().unwrap();
            let z: Vec<f64> = weights
                .iter()
                .zip(biases)
                .map(|(row, &b)| row.iter().zip(input).map(|(&w, &a)| w * a).sum::<f64>() + b)
                .collect();
            let a = if l == self.weights.len() - 1 {
                softmax(&z)
            } else {
                z.iter().map(|&v| v.max(0.0)).collect()
            };
            sums.push(z);
            activations.push(a);
        }
        Forward { sums, activations }
    }

    /// Class probabilities for one input.
    pub fn probabilities(&self, x: &[f64]) -> [f64; 2] {
        let out = self.forward(x);
        let p = out.activations.last().unwrap();
        [p[0], p[1]]
    }

    /// Hard prediction plus class probabilities; ties go to class 0.
    pub fn predict(&self, x: &[f64]) -> (u8, [f64; 2]) {
        let p = self.probabilities(x);
        (u8::from(p[1] > p[0]), p)
    }

    /// Mean negative log-likelihood of the true classes.
    pub fn loss(&self, inputs: &[Vec<f64>], labels: &[u8]) -> f64 {
        let mut total = 0.0;
        for (x, &y) in inputs.iter().zip(labels) {
            let p = self.probabilities(x)[y as usize];
            total -= p.max(1e-15).ln();
        }
        total / inputs.len() as f64
    }

    /// Full-batch loss and parameter gradients by backpropagation.
    pub fn loss_and_gradients(&self, inputs: &[Vec<f64>], labels: &[u8]) -> (f64, Gradients) {
        let (loss, _, grads) = self.batch(inputs, labels);
        (loss, grads)
    }

    /// One pass over the batch: loss, correct-prediction count, gradients.
    fn batch(&self, inputs: &[Vec<f64>], labels: &[u8]) -> (f64, usize, Gradients) {
        let n = inputs.len() as f64;
        let mut grads = Gradients {
            weights: self
                .weights
                .iter()
                .map(|layer| layer.iter().map(|row| vec![0.0; row.len()]).collect())
                .collect(),
            biases: self.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
        };
        let mut total_loss = 0.0;
        let mut correct = 0usize;
        for (x, &y) in inputs.iter().zip(labels) {
            let pass = self.forward(x);
            let probs = pass.activations.last().unwrap();
            total_loss -= probs[y as usize].max(1e-15).ln();
            if u8::from(probs[1] > probs[0]) == y {
                correct += 1;
            }

            // Softmax with log-loss: output delta is (p - onehot) / n.
            let mut delta: Vec<f64> = probs
                .iter()
                .enumerate()
                .map(|(i, &p)| (p - if i == y as usize { 1.0 } else { 0.0 }) / n)
                .collect();

            for l in (0..self.weights.len()).rev() {
                let input = &pass.activations[l];
                for (out, &d) in delta.iter().enumerate() {
                    grads.biases[l][out] += d;
                    for (inp, &a) in input.iter().enumerate() {
                        grads.weights[l][out][inp] += d * a;
                    }
                }
                if l > 0 {
                    // Push the delta through the weights and the ReLU gate.
                    delta = (0..self.layer_sizes[l])
                        .map(|inp| {
                            if pass.sums[l - 1][inp] > 0.0 {
                                delta
                                    .iter()
                                    .enumerate()
                                    .map(|(out, &d)| d * self.weights[l][out][inp])
                                    .sum()
                            } else {
                                0.0
                            }
                        })
                        .collect();
                }
            }
        }
        (total_loss / n, correct, grads)
    }

    /// Train in place with full-batch Adam; returns the loss trace.
    pub fn train(
        &mut self,
        inputs: &[Vec<f64>],
        labels: &[u8],
    ) -> Result<TrainTrace, LearnError> {
        if inputs.is_empty() {
            return Err(LearnError::Empty);
        }
        if inputs.len() != labels.len() {
            return Err(LearnError::LengthMismatch(inputs.len(), labels.len()));
        }
        for (i, row) in inputs.iter().enumerate() {
            if row.len() != self.input_dim() {
                return Err(LearnError::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: self.input_dim(),
                });
            }
        }
        for &label in labels {
            if label > 1 {
                return Err(LearnError::BadLabel(label));
            }
        }

        let mut m = Gradients {
            weights: self
                .weights
                .iter()
                .map(|layer| layer.iter().map(|row| vec![0.0; row.len()]).collect())
                .collect(),
            biases: self.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
        };
        let mut v = m.clone();
        let cfg = self.config.clone();
        let mut losses = Vec::with_capacity(cfg.epochs);
        let mut accuracies = Vec::with_capacity(cfg.epochs);
        for epoch in 1..=cfg.epochs {
            let (loss, correct, grads) = self.batch(inputs, labels);
            if !loss.is_finite() {
                return Err(LearnError::TrainingDiverged { epoch });
            }
            losses.push(loss);
            accuracies.push(correct as f64 / inputs.len() as f64);
            let bias1 = 1.0 - cfg.beta1.powi(epoch as i32);
            let bias2 = 1.0 - cfg.beta2.powi(epoch as i32);
            for l in 0..self.weights.len() {
                for out in 0..self.weights[l].len() {
                    for inp in 0..self.weights[l][out].len() {
                        let g = grads.weights[l][out][inp];
                        let mw = &mut m.weights[l][out][inp];
                        let vw = &mut v.weights[l][out][inp];
                        *mw = cfg.beta1 * *mw + (1.0 - cfg.beta1) * g;
                        *vw = cfg.beta2 * *vw + (1.0 - cfg.beta2) * g * g;
                        self.weights[l][out][inp] -= cfg.learning_rate * (*mw / bias1)
                            / ((*vw / bias2).sqrt() + cfg.epsilon);
                    }
                    let g = grads.biases[l][out];
                    let mb = &mut m.biases[l][out];
                    let vb = &mut v.biases[l][out];
                    *mb = cfg.beta1 * *mb + (1.0 - cfg.beta1) * g;
                    *vb = cfg.beta2 * *vb + (1.0 - cfg.beta2) * g * g;
                    self.biases[l][out] -= cfg.learning_rate * (*mb / bias1)
                        / ((*vb / bias2).sqrt() + cfg.epsilon);
                }
            }
        }
        Ok(TrainTrace { losses, accuracies })
    }
}

fn softmax(z: &[f64]) -> Vec<f64> {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|&v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.iter().map(|&e| e / sum).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_data() -> (Vec<Vec<f64>>, Vec<u8>) {
        // Two well-separated blobs in 2D.
        let inputs = vec![
            vec![0.0, 0.2],
            vec![0.3, -0.1],
            vec![-0.2, 0.1],
            vec![0.1, 0.0],
            vec![3.0, 3.2],
            vec![2.8, 3.1],
            vec![3.3, 2.9],
            vec![3.1, 3.0],
        ];
        let labels = vec![0, 0, 0, 0, 1, 1, 1, 1];
        (inputs, labels)
    }

    #[test]
    fn default_topology_matches_the_design() {
        let model = MlpModel::new(8, MlpConfig::default(), 1).unwrap();
        assert_eq!(model.layer_sizes, vec![8, 14, 12, 2]);
        assert_eq!(model.weights.len(), 3);
        assert_eq!(model.weights[0].len(), 14);
        assert_eq!(model.weights[0][0].len(), 8);
        assert_eq!(model.weights[2].len(), 2);
        assert!(model.biases.iter().flatten().all(|&b| b == 0.0));
    }

    #[test]
    fn initial_weights_stay_inside_their_limits() {
        let model = MlpModel::new(10, MlpConfig::default(), 42).unwrap();
        let hidden_limit = (6.0f64 / 10.0).sqrt();
        for row in &model.weights[0] {
            for &w in row {
                assert!(w.abs() < hidden_limit, "{w} outside ±{hidden_limit}");
            }
        }
        let output_limit = (6.0f64 / (12.0 + 2.0)).sqrt();
        for row in &model.weights[2] {
            for &w in row {
                assert!(w.abs() < output_limit, "{w} outside ±{output_limit}");
            }
        }
    }

    #[test]
    fn initialization_is_seed_deterministic() {
        let a = MlpModel::new(5, MlpConfig::default(), 7).unwrap();
        let b = MlpModel::new(5, MlpConfig::default(), 7).unwrap();
        let c = MlpModel::new(5, MlpConfig::default(), 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.weights, c.weights);
    }

    #[test]
    fn probabilities_form_a_distribution() {
        let model = MlpModel::new(3, MlpConfig::default(), 3).unwrap();
        let p = model.probabilities(&[0.5, -1.0, 2.0]);
        assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
        assert!(p[0] > 0.0 && p[1] > 0.0);
    }

    #[test]
    fn softmax_is_stable_for_large_sums() {
        let p = softmax(&[1000.0, 1002.0]);
        assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
        assert!(p[1] > p[0]);
        assert!(p.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn gradients_match_central_differences() {
        let config = MlpConfig { hidden: vec![3], epochs: 1, ..MlpConfig::default() };
        let model = MlpModel::new(2, config, 11).unwrap();
        let (inputs, labels) = toy_data();
        let (_, grads) = model.loss_and_gradients(&inputs, &labels);

        let step = 1e-5;
        let mut checked = 0;
        for l in 0..model.weights.len() {
            for out in 0..model.weights[l].len() {
                for inp in 0..model.weights[l][out].len() {
                    let mut plus = model.clone();
                    plus.weights[l][out][inp] += step;
                    let mut minus = model.clone();
                    minus.weights[l][out][inp] -= step;
                    let numeric = (plus.loss(&inputs, &labels)
                        - minus.loss(&inputs, &labels))
                        / (2.0 * step);
                    let analytic = grads.weights[l][out][inp];
                    assert!(
                        (analytic - numeric).abs() <= 1e-7 + 1e-5 * numeric.abs(),
                        "weight[{l}][{out}][{inp}]: {analytic} vs {numeric}"
                    );
                    checked += 1;
                }
                let mut plus = model.clone();
                plus.biases[l][out] += step;
                let mut minus = model.clone();
                minus.biases[l][out] -= step;
                let numeric =
                    (plus.loss(&inputs, &labels) - minus.loss(&inputs, &labels)) / (2.0 * step);
                let analytic = grads.biases[l][out];
                assert!(
                    (analytic - numeric).abs() <= 1e-7 + 1e-5 * numeric.abs(),
                    "bias[{l}][{out}]: {analytic} vs {numeric}"
                );
                checked += 1;
            }
        }
        assert_eq!(checked, (2 * 3 + 3) + (3 * 2 + 2));
    }

    #[test]
    fn training_separates_blobs_and_reduces_loss() {
        let (inputs, labels) = toy_data();
        let config = MlpConfig { epochs: 400, ..MlpConfig::default() };
        let mut model = MlpModel::new(2, config, 5).unwrap();
        let trace = model.train(&inputs, &labels).unwrap();
        assert_eq!(trace.losses.len(), 400);
        assert_eq!(trace.accuracies.len(), 400);
        assert!(trace.final_loss() < trace.losses[0]);
        assert_eq!(trace.final_accuracy(), 1.0);
        for (x, &y) in inputs.iter().zip(&labels) {
            assert_eq!(model.predict(x).0, y);
        }
    }

    #[test]
    fn training_is_bit_reproducible() {
        let (inputs, labels) = toy_data();
        let config = MlpConfig { epochs: 50, ..MlpConfig::default() };
        let mut a = MlpModel::new(2, config.clone(), 21).unwrap();
        let mut b = MlpModel::new(2, config, 21).unwrap();
        a.train(&inputs, &labels).unwrap();
        b.train(&inputs, &labels).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn train_validates_its_inputs() {
        let config = MlpConfig { epochs: 1, ..MlpConfig::default() };
        let mut model = MlpModel::new(2, config, 1).unwrap();
        assert!(matches!(model.train(&[], &[]), Err(LearnError::Empty)));
        assert!(matches!(
            model.train(&[vec![1.0]], &[0]),
            Err(LearnError::RaggedRow { .. })
        ));
        assert!(matches!(
            model.train(&[vec![1.0, 2.0]], &[0, 1]),
            Err(LearnError::LengthMismatch(1, 2))
        ));
        assert!(matches!(
            model.train(&[vec![1.0, 2.0]], &[3]),
            Err(LearnError::BadLabel(3))
        ));
    }

    #[test]
    fn zero_sized_networks_are_rejected() {
        assert!(MlpModel::new(0, MlpConfig::default(), 1).is_err());
        let config = MlpConfig { hidden: vec![4, 0], ..MlpConfig::default() };
        assert!(MlpModel::new(3, config, 1).is_err());
    }

    #[test]
    fn tie_prediction_goes_to_class_zero() {
        // Zero weights after zeroing: softmax of [0, 0] is a tie.
        let mut model = MlpModel::new(1, MlpConfig::default(), 1).unwrap();
        for layer in &mut model.weights {
            for row in layer {
                for w in row {
                    *w = 0.0;
                }
            }
        }
        let (class, p) = model.predict(&[1.0]);
        assert_eq!(class, 0);
        assert_eq!(p[0], p[1]);
    }
}
