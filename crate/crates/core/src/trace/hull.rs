use serde::Serialize;

use super::{Sampling, TraceError};
use crate::quartic::BitangentSet;

/// Tangency neighbourhoods skipped by the sign test, in units of the sample
/// spacing.
pub const EXCLUSION_FACTOR: f64 = 25.0;
/// Slack threshold relative to the picture scale.
pub const SLACK_TOL: f64 = 1e-6;
/// Hull segments longer than this many spacings are edge candidates.
pub const LONG_SEGMENT_FACTOR: f64 = 10.0;

/// Certificate that a totally real bitangent supports an edge of the hull.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeCert {
    pub bitangent: usize,
    pub points: [[f64; 2]; 2],
    /// Minimum of the oriented, unit-normalized line functional over all
    /// samples outside the exclusion radius.
    pub slack: f64,
    pub exclusion_radius: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    pub e: usize,
    pub certs: Vec<EdgeCert>,
    /// Convex hull of the samples, counter-clockwise.
    pub hull: Vec<[f64; 2]>,
    pub long_segments: Vec<[[f64; 2]; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Counts the edges of the convex hull of the real locus cut out by totally
/// real bitangents. Each candidate is decided by the sign of its line
/// functional on the samples; the result is cross-checked against the long
/// segments of the hull of the samples.
pub fn hull_edges(sampling: &Sampling, set: &BitangentSet) -> Result<HullReport, TraceError> {
    let scale = sampling.scale();
    let tol = SLACK_TOL * scale;
    let radius = EXCLUSION_FACTOR * sampling.spacing;
    let samples: Vec<[f64; 2]> = sampling.points().copied().collect();
    let mut certs = Vec::new();
    for (k, bt) in set.bitangents.iter().enumerate() {
        if !bt.totally_real {
            continue;
        }
        if bt.degenerate {
            return Err(TraceError::DegenerateTangency { bitangent: k });
        }
        let (Some(l), Some(pts)) = (bt.line.real_coeffs(), bt.real_points()) else {
            return Err(TraceError::MethodDisagreement {
                bitangent: k,
                reason: "totally real bitangent without real affine tangency points".into(),
            });
        };
        let norm = l[0].hypot(l[1]);
        let tangency = pts.map(|(x, y)| [x, y]);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &p in &samples {
            if tangency.iter().any(|&t| dist(p, t) < radius) {
                continue;
            }
            let v = (l[0] * p[0] + l[1] * p[1] + l[2]) / norm;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let slack = if lo >= tol {
            lo
        } else if hi <= -tol {
            -hi
        } else if lo < -tol && hi > tol {
            continue;
        } else {
            return Err(TraceError::MethodDisagreement {
                bitangent: k,
                reason: format!("slack range [{lo:.3e}, {hi:.3e}] within tolerance {tol:.1e}"),
            });
        };
        certs.push(EdgeCert {
            bitangent: k,
            points: tangency,
            slack,
            exclusion_radius: radius,
        });
    }

    let hull = convex_hull(&samples);
    let long = LONG_SEGMENT_FACTOR * sampling.spacing;
    let long_segments: Vec<[[f64; 2]; 2]> = (0..hull.len())
        .map(|i| [hull[i], hull[(i + 1) % hull.len()]])
        .filter(|[a, b]| dist(*a, *b) > long)
        .collect();
    let near = LONG_SEGMENT_FACTOR * sampling.spacing;
    let mut used = vec![false; long_segments.len()];
    for c in &certs {
        let [t0, t1] = c.points;
        let hit = long_segments.iter().enumerate().position(|(i, [a, b])| {
            !used[i]
                && ((dist(*a, t0) <= near && dist(*b, t1) <= near)
                    || (dist(*a, t1) <= near && dist(*b, t0) <= near))
        });
        match hit {
            Some(i) => used[i] = true,
            None => {
                return Err(TraceError::MethodDisagreement {
                    bitangent: c.bitangent,
                    reason: "supporting bitangent has no matching hull segment".into(),
                })
            }
        }
    }
    if let Some(i) = used.iter().position(|u| !u) {
        let [a, b] = long_segments[i];
        return Err(TraceError::MethodDisagreement {
            bitangent: usize::MAX,
            reason: format!(
                "hull segment ({:.4}, {:.4})-({:.4}, {:.4}) matches no supporting bitangent",
                a[0], a[1], b[0], b[1]
            ),
        });
    }
    Ok(HullReport {
        e: certs.len(),
        certs,
        hull,
        long_segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        let area: f64 = (0..h.len())
            .map(|i| cross([0.0, 0.0], h[i], h[(i + 1) % h.len()]))
            .sum::<f64>()
            / 2.0;
        assert!((area - 1.0).abs() < 1e-12);
    }
}
