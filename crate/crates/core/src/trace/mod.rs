//! Tracing the real locus of a quartic: ovals, hull edges cut out by
//! totally real bitangents, and components of the set of avoiding lines.

mod avoid;
mod hull;
mod sample;
mod svg;

pub use avoid::{
    avoidance_components, quartic_discriminant, quartic_has_real_root, AvoidanceEstimate,
    DEFAULT_DUAL_RESOLUTION,
};
pub use hull::{convex_hull, hull_edges, EdgeCert, HullReport, EXCLUSION_FACTOR, SLACK_TOL};
pub use sample::{sample_curve, Oval, Sampling, DEFAULT_RESOLUTION, PROJECTION_TOL};
pub use svg::render_svg;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("result not stable under resolution doubling (counts {counts:?})")]
    ResolutionUnstable { counts: Vec<usize> },
    #[error("sign test and hull extraction disagree on bitangent {bitangent}: {reason}")]
    MethodDisagreement { bitangent: usize, reason: String },
    #[error("bitangent {bitangent} is totally real but its tangency points coincide")]
    DegenerateTangency { bitangent: usize },
}
