//! Learning pipeline: feature matrices, standardization, feature
//! selection, minority oversampling, a small feed-forward classifier,
//! and evaluation reports.
//!
//! Everything here is deterministic given a seed. Randomized stages
//! (oversampling, the train/test split, weight initialization) take an
//! explicit seed and use a counter-based generator, so the same inputs
//! always produce bit-identical models.

pub mod artifact;
pub mod eval;
pub mod matrix;
pub mod mlp;
pub mod select;
pub mod smote;
pub mod stats;

pub use artifact::ModelArtifact;
pub use eval::{evaluate, EvalReport};
pub use matrix::{stratified_split, FeatureMatrix, Standardization};
pub use mlp::{MlpConfig, MlpModel, TrainTrace};
pub use select::{correlation_prune, select_k_best, FeatureScore, SelectionReport};
pub use smote::{oversample, DEFAULT_NEIGHBOURS};
pub use stats::{anova_f, pearson};

/// Errors raised by the learning pipeline.
#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error("dataset has no rows")]
    Empty,
    #[error("row {row} has {got} values, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("class labels must be 0 or 1, found {0}")]
    BadLabel(u8),
    #[error("record {0:?} has no class label")]
    Unlabelled(String),
    #[error("all rows belong to a single class")]
    SingleClass,
    #[error("oversampling needs at least two minority rows, found {0}")]
    TooFewMinority(usize),
    #[error("requested {requested} features but only {available} are available")]
    TooManyFeatures { requested: usize, available: usize },
    #[error("unknown feature column {0:?}")]
    UnknownColumn(String),
    #[error("train size {train} must leave non-empty train and test sets ({total} rows)")]
    BadSplit { train: usize, total: usize },
    #[error("training diverged at epoch {epoch}")]
    TrainingDiverged { epoch: usize },
    #[error("length mismatch: {0} predictions vs {1} labels")]
    LengthMismatch(usize, usize),
    #[error("{0}")]
    Insufficient(String),
    #[error("model artifact: {0}")]
    Artifact(String),
}
