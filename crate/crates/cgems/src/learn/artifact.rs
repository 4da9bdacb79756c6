//! Trained-model persistence.
//!
//! An artifact bundles everything needed to reproduce or apply a model:
//! the network itself, the fitted standardization for its input columns,
//! the selected column names, the seed, and a digest of the training
//! configuration. Artifacts are JSON on disk and versioned by
//! [`SCHEMA_VERSION`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::matrix::Standardization;
use super::mlp::MlpModel;
use super::LearnError;

/// Bump when the artifact layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

/// A trained model with its preprocessing state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArtifact {
    pub schema_version: u32,
    /// Seed that drove every randomized stage of training.
    pub seed: u64,
    /// Digest of the training configuration (hyperparameters and
    /// selection settings), for provenance checks.
    pub config_hash: String,
    /// Input columns the model consumes, in order.
    pub selected: Vec<String>,
    /// Location/scale parameters for exactly those columns.
    pub standardization: Standardization,
    pub model: MlpModel,
}

impl ModelArtifact {
    pub fn new(
        seed: u64,
        config_hash: String,
        selected: Vec<String>,
        standardization: Standardization,
        model: MlpModel,
    ) -> Result<ModelArtifact, LearnError> {
        let artifact = ModelArtifact {
            schema_version: SCHEMA_VERSION,
            seed,
            config_hash,
            selected,
            standardization,
            model,
        };
        artifact.validate()?;
        Ok(artifact)
    }

    fn validate(&self) -> Result<(), LearnError> {
        if self.standardization.columns != self.selected {
            return Err(LearnError::Artifact(
                "standardization columns do not match the selected features".to_string(),
            ));
        }
        if self.model.input_dim() != self.selected.len() {
            return Err(LearnError::Artifact(format!(
                "model expects {} inputs but {} features are selected",
                self.model.input_dim(),
                self.selected.len()
            )));
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), LearnError> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| LearnError::Artifact(e.to_string()))?;
        std::fs::write(path, json)
            .map_err(|e| LearnError::Artifact(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<ModelArtifact, LearnError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LearnError::Artifact(format!("{}: {e}", path.display())))?;
        let artifact: ModelArtifact =
            serde_json::from_str(&text).map_err(|e| LearnError::Artifact(e.to_string()))?;
        if artifact.schema_version != SCHEMA_VERSION {
            return Err(LearnError::Artifact(format!(
                "unsupported artifact version {} (expected {SCHEMA_VERSION})",
                artifact.schema_version
            )));
        }
        artifact.validate()?;
        Ok(artifact)
    }

    /// Digest of the canonical JSON serialization; identical training
    /// inputs yield identical digests.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("artifact serializes");
        sha256_hex(json.as_bytes())
    }

    /// Predict from a row of named raw feature values. `columns` names
    /// each entry of `values`; the selected columns are picked out,
    /// standardized, and fed to the network.
    pub fn predict_from_named(
        &self,
        columns: &[String],
        values: &[f64],
    ) -> Result<(u8, [f64; 2]), LearnError> {
        if columns.len() != values.len() {
            return Err(LearnError::LengthMismatch(columns.len(), values.len()));
        }
        let mut raw = Vec::with_capacity(self.selected.len());
        for name in &self.selected {
            let index = columns
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| LearnError::UnknownColumn(name.clone()))?;
            raw.push(values[index]);
        }
        let standardized = self.standardization.transform_row(&raw);
        Ok(self.model.predict(&standardized))
    }
}

/// Lowercase hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
