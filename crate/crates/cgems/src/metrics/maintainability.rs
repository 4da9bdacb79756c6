//! Maintainability index on a 100-point scale.
//!
//! The index combines Halstead volume `V`, total cyclomatic complexity
//! `G`, source line count and comment density `R` into
//!
//! ```text
//! mi = 100 * (171 - 5.2*ln(max(V,1)) - 0.23*G - 16.2*ln(max(sloc,1))
//!             + 50*sin(sqrt(2.4*R))) / 171
//! ```
//!
//! clamped to `[0, 100]`, where `R = (comments + multi) / loc` clamped to
//! `[0, 1]` (0 for an empty file). An empty file therefore scores exactly
//! 100.

use serde::{Deserialize, Serialize};

use super::complexity::CyclomaticResult;
use super::halstead::HalsteadMetrics;
use super::raw::RawMetrics;

/// Maintainability index plus the ingredients that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaintainabilityScore {
    /// The index, in `[0, 100]`.
    pub value: f64,
    pub volume: f64,
    pub total_complexity: u32,
    pub sloc: usize,
    /// The comment ratio `R` actually used, in `[0, 1]`.
    pub comment_ratio: f64,
}

/// Combine raw, Halstead and cyclomatic measures into the index.
pub fn maintainability_index(
    raw: &RawMetrics,
    halstead: &HalsteadMetrics,
    cyclomatic: &CyclomaticResult,
) -> MaintainabilityScore {
    let ratio = if raw.loc == 0 {
        0.0
    } else {
        ((raw.comments + raw.multi) as f64 / raw.loc as f64).clamp(0.0, 1.0)
    };
    let volume_term = 5.2 * halstead.volume.max(1.0).ln();
    let complexity_term = 0.23 * f64::from(cyclomatic.total);
    let sloc_term = 16.2 * (raw.sloc.max(1) as f64).ln();
    let comment_term = 50.0 * (2.4 * ratio).sqrt().sin();
    let unscaled = 171.0 - volume_term - complexity_term - sloc_term + comment_term;
    MaintainabilityScore {
        value: (100.0 * unscaled / 171.0).clamp(0.0, 100.0),
        volume: halstead.volume,
        total_complexity: cyclomatic.total,
        sloc: raw.sloc,
        comment_ratio: ratio,
    }
}
