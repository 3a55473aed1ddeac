//! The full quartic pipeline: validation, bitangents, tracing, topology,
//! hull edges, avoidance components and the bound checks.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::BiPoly;
use crate::quartic::{
    bitangents, check_quartic, infer_topology, Bitangent, BitangentCounts, BitangentSet,
    ProjectiveChange, QuarticError,
};
use crate::thetacount::{
    count_real_theta, face_lower_bound, face_upper_bound, totally_real_lower_bound, CurveTopology,
    ThetaError,
};
use crate::trace::{
    avoidance_components, hull_edges, sample_curve, AvoidanceEstimate, EdgeCert, HullReport,
    Sampling, TraceError, DEFAULT_DUAL_RESOLUTION, DEFAULT_RESOLUTION,
};

pub const DEFAULT_SEED: u64 = 20_240_101;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Quartic(#[from] QuarticError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AnalysisOptions {
    pub resolution: usize,
    pub dual_resolution: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            resolution: DEFAULT_RESOLUTION,
            dual_resolution: DEFAULT_DUAL_RESOLUTION,
            seed: DEFAULT_SEED,
        }
    }
}

/// A count checked against an interval.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundCheck {
    pub value: u64,
    pub lower: u64,
    pub upper: u64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(value: u64, lower: u64, upper: u64) -> Self {
        BoundCheck {
            value,
            lower,
            upper,
            holds: lower <= value && value <= upper,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundVerdicts {
    /// `face_lower_bound <= E <= face_upper_bound`.
    pub edges: BoundCheck,
    /// `totally_real_lower_bound <= T <= odd real theta characteristics`.
    pub totally_real: BoundCheck,
    /// Real bitangents against `4 (2^{s-1} - 1 + a)`.
    pub real_lines: BoundCheck,
    /// Avoidance components against `2^{s-1} - 1 + a`.
    pub avoidance: BoundCheck,
}

impl BoundVerdicts {
    pub fn all_hold(&self) -> bool {
        self.edges.holds && self.totally_real.holds && self.real_lines.holds && self.avoidance.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticReport {
    pub polynomial: String,
    pub s: u32,
    pub a: u8,
    pub topology: CurveTopology,
    pub counts: BitangentCounts,
    pub t: usize,
    pub e: usize,
    pub avoidance: AvoidanceEstimate,
    pub bounds: BoundVerdicts,
    pub change: ProjectiveChange,
    pub attempts: usize,
    pub bitangents: Vec<Bitangent>,
    pub edges: Vec<EdgeCert>,
    pub resolution: usize,
    pub oval_counts: Vec<usize>,
    pub sample_spacing: f64,
}

/// Everything computed for one curve; `report` is the serializable summary.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: QuarticReport,
    pub set: BitangentSet,
    pub sampling: Sampling,
    pub hull: HullReport,
}

fn small(v: &BigUint) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

pub fn analyze(f: &BiPoly, opts: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    let q = check_quartic(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let set = bitangents(&q, &mut rng)?;
    let counts = set.counts();
    let sampling = sample_curve(&q, opts.resolution)?;
    let s = sampling.s() as u32;
    let topology = infer_topology(counts.real_lines, s)?;
    let a = topology.a();
    let hull = hull_edges(&sampling, &set)?;
    let avoidance = avoidance_components(&q, opts.dual_resolution)?;

    let e = hull.e;
    let t = counts.totally_real;
    let expected_avoiding = (1u64 << (s - 1)) - 1 + a as u64;
    let bounds = BoundVerdicts {
        edges: BoundCheck::new(
            e as u64,
            small(&face_lower_bound(&topology, None)?),
            small(&face_upper_bound(3)?),
        ),
        totally_real: BoundCheck::new(
            t as u64,
            small(&totally_real_lower_bound(&topology)),
            small(&count_real_theta(&topology).odd),
        ),
        real_lines: BoundCheck::new(
            counts.real_lines as u64,
            4 * expected_avoiding,
            4 * expected_avoiding,
        ),
        avoidance: BoundCheck::new(avoidance.components as u64, expected_avoiding, expected_avoiding),
    };
    let report = QuarticReport {
        polynomial: q.poly().to_string(),
        s,
        a,
        topology,
        counts,
        t,
        e,
        avoidance,
        bounds,
        change: set.change,
        attempts: set.attempts,
        bitangents: set.bitangents.clone(),
        edges: hull.certs.clone(),
        resolution: sampling.resolution,
        oval_counts: sampling.counts.clone(),
        sample_spacing: sampling.spacing,
    };
    Ok(Analysis {
        report,
        set,
        sampling,
        hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn fermat_row() {
        let f = parse_poly("1 - x^4 - y^4").unwrap();
        let r = analyze(&f, &AnalysisOptions::default()).unwrap().report;
        assert_eq!((r.s, r.a, r.t, r.e), (1, 1, 0, 0));
        assert!(r.bounds.all_hold());
    }

    #[test]
    fn rejects_noncompact() {
        let f = parse_poly("x^4 - y^4 + 1").unwrap();
        assert!(matches!(
            analyze(&f, &AnalysisOptions::default()),
            Err(AnalysisError::Quartic(QuarticError::NonCompact { .. }))
        ));
    }
}
