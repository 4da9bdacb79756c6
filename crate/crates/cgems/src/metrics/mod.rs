//! Static source metrics computed from the token stream.
//!
//! * [`raw`] — physical/logical line counts and comment densities.
//! * [`complexity`] — per-block cyclomatic complexity with letter grades.
//! * [`halstead`] — the Halstead software-science suite.
//! * [`maintainability`] — a 100-point maintainability index combining
//!   the other three.

pub mod complexity;
pub mod halstead;
pub mod maintainability;
pub mod raw;

pub use complexity::{cyclomatic, grade_for, BlockComplexity, CyclomaticResult};
pub use halstead::{halstead, HalsteadMetrics};
pub use maintainability::{maintainability_index, MaintainabilityScore};
pub use raw::{raw_metrics, RawMetrics};
