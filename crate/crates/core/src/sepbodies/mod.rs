//! Strongly separated convex bodies given as point clouds: separation
//! tests, the iterative common supporting hyperplane construction, and a
//! brute-force facet oracle.

mod linalg;
mod lp;
mod oracle;
mod random;
mod separate;
mod support;

pub use linalg::{affinely_independent, det_form};
pub use oracle::{facet_oracle, Facet, MAX_ORACLE_POINTS, MAX_ORACLE_TUPLES};
pub use random::random_separated;
pub use separate::{strongly_separated, Separation, Witness, MAX_BODIES};
pub use support::{
    support_functional, support_functional_with, uniqueness_check, Orientation, SupportCert,
    Touch, AGREEMENT_COS, ITERATION_CAP, TOL,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SepError {
    #[error("body {body} has dimension {found}, expected {expected}")]
    DimensionMismatch { body: usize, expected: usize, found: usize },
    #[error("body {body} has {found} points, needs at least {needed}")]
    TooFewPoints { body: usize, found: usize, needed: usize },
    #[error("body {body} does not span its ambient space")]
    Flat { body: usize },
    #[error("body {body} has a non-finite coordinate")]
    NonFinite { body: usize },
    #[error("expected {expected} bodies, found {found}")]
    BodyCount { expected: String, found: usize },
    #[error("bodies are not strongly separated (bipartition {side:?})")]
    NotSeparated { side: Vec<usize> },
    #[error("iteration cap of {cap} reached")]
    IterationCap { cap: usize },
    #[error("negative region did not shrink at iteration {iteration}")]
    NotMonotone { iteration: usize },
    #[error("certificate check failed: {0}")]
    Indeterminate(String),
    #[error("instance too large for the facet oracle: {0}")]
    SizeCap(String),
}

/// A convex body: the convex hull of finitely many points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Body {
    points: Vec<Vec<f64>>,
}

impl Body {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Body, SepError> {
        Self::checked(points, 0)
    }

    fn checked(points: Vec<Vec<f64>>, body: usize) -> Result<Body, SepError> {
        let n = points.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(SepError::TooFewPoints { body, found: points.len(), needed: n + 1 });
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(SepError::DimensionMismatch { body, expected: n, found: p.len() });
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(SepError::NonFinite { body });
        }
        if points.len() < n + 1 {
            return Err(SepError::TooFewPoints { body, found: points.len(), needed: n + 1 });
        }
        if linalg::affine_rank(&points) < n {
            return Err(SepError::Flat { body });
        }
        Ok(Body { points })
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Minimum of `f` over the body (attained at a generator) and its index.
    pub fn minimum(&self, f: &Affine) -> (f64, usize) {
        linalg::argmin(&self.points, f)
    }

    pub fn map(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Body {
        Body {
            points: self.points.iter().map(|p| f(p)).collect(),
        }
    }
}

/// The document format: `{"dimension": n, "bodies": [[[x, ...], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodySet {
    pub dimension: usize,
    pub bodies: Vec<Vec<Vec<f64>>>,
}

impl BodySet {
    pub fn from_bodies(bodies: &[Body]) -> BodySet {
        BodySet {
            dimension: bodies.first().map_or(0, Body::dimension),
            bodies: bodies.iter().map(|b| b.points.clone()).collect(),
        }
    }

    pub fn to_bodies(&self) -> Result<Vec<Body>, SepError> {
        self.bodies
            .iter()
            .enumerate()
            .map(|(i, pts)| {
                let b = Body::checked(pts.clone(), i)?;
                if b.dimension() != self.dimension {
                    return Err(SepError::DimensionMismatch {
                        body: i,
                        expected: self.dimension,
                        found: b.dimension(),
                    });
                }
                Ok(b)
            })
            .collect()
    }
}

/// `x -> normal . x + offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Affine {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Affine {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + self.offset
    }

    pub fn scaled(&self, k: f64) -> Affine {
        Affine {
            normal: self.normal.iter().map(|c| c * k).collect(),
            offset: self.offset * k,
        }
    }

    /// Rescaled to a unit normal; the sign is kept.
    pub fn normalized(&self) -> Affine {
        let n = self.normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        self.scaled(1.0 / n)
    }

    /// Cosine between the coefficient vectors `(normal, offset)`.
    pub fn cosine(&self, other: &Affine) -> f64 {
        let a: Vec<f64> = self.normal.iter().copied().chain([self.offset]).collect();
        let b: Vec<f64> = other.normal.iter().copied().chain([other.offset]).collect();
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        dot / (na * nb)
    }
}

/// Diagonal of the bounding box of all points.
pub fn scale(bodies: &[Body]) -> f64 {
    linalg::diameter(bodies.iter().flat_map(|b| b.points.iter()))
}

fn check_dimensions(bodies: &[Body]) -> Result<usize, SepError> {
    let n = bodies.first().map_or(0, Body::dimension);
    for (i, b) in bodies.iter().enumerate() {
        if b.dimension() != n {
            return Err(SepError::DimensionMismatch { body: i, expected: n, found: b.dimension() });
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_validation() {
        assert!(Body::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).is_ok());
        assert!(matches!(
            Body::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]),
            Err(SepError::Flat { .. })
        ));
        assert!(matches!(
            Body::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]),
            Err(SepError::TooFewPoints { .. })
        ));
        assert!(matches!(
            Body::new(vec![vec![0.0, f64::NAN], vec![1.0, 0.0], vec![0.0, 1.0]]),
            Err(SepError::NonFinite { .. })
        ));
    }

    #[test]
    fn document_round_trip() {
        let doc = r#"{"dimension": 1, "bodies": [[[1.0], [2.0]], [[5.0], [7.0]]]}"#;
        let set: BodySet = serde_json::from_str(doc).unwrap();
        let bodies = set.to_bodies().unwrap();
        assert_eq!(BodySet::from_bodies(&bodies), set);
        let bad: BodySet = serde_json::from_str(r#"{"dimension": 2, "bodies": [[[1.0], [2.0]]]}"#).unwrap();
        assert!(matches!(bad.to_bodies(), Err(SepError::DimensionMismatch { .. })));
    }
}
