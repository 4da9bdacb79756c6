//! Code quality metrics and a small learning pipeline for grading
//! machine-generated source code against human references.
//!
//! The crate is organised in layers:
//!
//! * [`profile`] — a declarative description of the language being measured
//!   (keywords, comment syntax, string delimiters, block structure).
//! * [`lexer`] / [`blocks`] — a profile-driven tokenizer producing a flat
//!   token stream, plus logical-line and block-structure recovery on top
//!   of it.
//! * [`metrics`] — static measures computed from the token stream: raw
//!   line counts, cyclomatic complexity, the Halstead suite and a
//!   maintainability index.
//! * [`similarity`] — text similarity between a generated program and a
//!   reference: sequence ratio and edit counts, BLEU, ROUGE, and
//!   (soft-)cosine angles.
//! * [`runner`] — dynamic measures (compile check, execution time,
//!   statement coverage) obtained by shelling out to a configurable
//!   external runner.
//! * [`dataset`] — corpus manifests, feature extraction, labelling, and
//!   CSV persistence of feature records.
//! * [`learn`] — standardization, feature selection (correlation pruning
//!   and ANOVA F-tests), SMOTE oversampling, a small feed-forward network
//!   trained with Adam, and evaluation reports.
//! * [`explain`] — local surrogate explanations of individual predictions.
//!
//! All randomised steps take explicit seeds and are deterministic for a
//! given seed.

pub mod blocks;
pub mod dataset;
pub mod explain;
pub mod learn;
pub mod lexer;
pub mod metrics;
pub mod profile;
pub mod runner;
pub mod similarity;

pub use profile::LanguageProfile;

/// Crate version, for provenance stamps in downstream tools.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
