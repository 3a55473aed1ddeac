use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::TraceError;
use crate::exactpoly::FloatBiPoly;
use crate::quartic::Quartic;

/// Relative residual every sample reaches after projection.
pub const PROJECTION_TOL: f64 = 1e-10;
pub const DEFAULT_RESOLUTION: usize = 512;
const MAX_DOUBLINGS: usize = 3;
const REFINEMENTS: usize = 2;

/// A closed polyline on one connected component of the real locus.
#[derive(Clone, Debug, Serialize)]
pub struct Oval {
    pub points: Vec<[f64; 2]>,
    /// `[x_min, x_max, y_min, y_max]`.
    pub bbox: [f64; 4],
}

impl Oval {
    fn new(points: Vec<[f64; 2]>) -> Self {
        let mut bbox = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
        for p in &points {
            bbox[0] = bbox[0].min(p[0]);
            bbox[1] = bbox[1].max(p[0]);
            bbox[2] = bbox[2].min(p[1]);
            bbox[3] = bbox[3].max(p[1]);
        }
        Oval { points, bbox }
    }

    /// Consecutive pairs, including the closing one.
    pub fn segments(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let n = self.points.len();
        (0..n).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sampling {
    pub ovals: Vec<Oval>,
    /// Grid resolution that produced the ovals.
    pub resolution: usize,
    /// Largest distance between consecutive samples.
    pub spacing: f64,
    pub bbox: [f64; 4],
    /// Oval counts at each resolution tried, coarsest first.
    pub counts: Vec<usize>,
}

impl Sampling {
    pub fn s(&self) -> usize {
        self.ovals.len()
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64; 2]> {
        self.ovals.iter().flat_map(|o| o.points.iter())
    }

    /// Larger side of the sampled region.
    pub fn scale(&self) -> f64 {
        (self.bbox[1] - self.bbox[0]).max(self.bbox[3] - self.bbox[2])
    }
}

/// Newton projection onto `f = 0` along the gradient.
pub(crate) fn project(f: &FloatBiPoly, mut p: [f64; 2]) -> Option<[f64; 2]> {
    for _ in 0..50 {
        let (v, gx, gy) = f.eval_grad(p[0], p[1]);
        let scale = f.eval_abs(p[0], p[1]).max(f64::MIN_POSITIVE);
        if v.abs() <= PROJECTION_TOL * scale {
            return Some(p);
        }
        let g2 = gx * gx + gy * gy;
        if g2 == 0.0 || !g2.is_finite() {
            return None;
        }
        p = [p[0] - v * gx / g2, p[1] - v * gy / g2];
    }
    None
}

/// Closed loops of edge crossings from marching squares on an `n x n` grid.
fn march(f: &FloatBiPoly, bbox: [f64; 4], n: usize) -> Vec<Vec<[f64; 2]>> {
    let hx = (bbox[1] - bbox[0]) / n as f64;
    let hy = (bbox[3] - bbox[2]) / n as f64;
    let vert = |i: usize, j: usize| [bbox[0] + i as f64 * hx, bbox[2] + j as f64 * hy];
    let w = n + 1;
    let values: Vec<f64> = (0..w * w)
        .into_par_iter()
        .map(|k| {
            let [x, y] = vert(k % w, k / w);
            f.eval(x, y)
        })
        .collect();
    let pos = |i: usize, j: usize| values[j * w + i] >= 0.0;
    // Edge ids: 2 k for the edge from vertex k to the right, 2 k + 1 upward.
    let h_edge = |i: usize, j: usize| 2 * (j * w + i);
    let v_edge = |i: usize, j: usize| 2 * (j * w + i) + 1;
    let crossing = |e: usize| -> [f64; 2] {
        let k = e / 2;
        let (i, j) = (k % w, k / w);
        let (a, b) = if e.is_multiple_of(2) { ((i, j), (i + 1, j)) } else { ((i, j), (i, j + 1)) };
        let (va, vb) = (values[a.1 * w + a.0], values[b.1 * w + b.0]);
        let t = va / (va - vb);
        let (pa, pb) = (vert(a.0, a.1), vert(b.0, b.1));
        [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]
    };

    let mut links: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut link = |a: usize, b: usize| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for j in 0..n {
        for i in 0..n {
            let c = [pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)];
            let edges = [h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)];
            let cut: Vec<usize> = (0..4).filter(|&k| c[k] != c[(k + 1) % 4]).collect();
            match cut.len() {
                2 => link(edges[cut[0]], edges[cut[1]]),
                4 => {
                    let [x, y] = vert(i, j);
                    let centre = f.eval(x + hx / 2.0, y + hy / 2.0) >= 0.0;
                    if centre == c[0] {
                        // Corners 1 and 3 are cut off.
                        link(edges[0], edges[1]);
                        link(edges[2], edges[3]);
                    } else {
                        link(edges[3], edges[0]);
                        link(edges[1], edges[2]);
                    }
                }
                _ => {}
            }
        }
    }

    let mut keys: Vec<usize> = links.keys().copied().collect();
    keys.sort_unstable();
    let mut seen: HashMap<usize, bool> = HashMap::new();
    let mut loops = Vec::new();
    for start in keys {
        if seen.contains_key(&start) {
            continue;
        }
        let mut ring = vec![start];
        seen.insert(start, true);
        let (mut prev, mut cur) = (start, links[&start][0]);
        while cur != start {
            seen.insert(cur, true);
            ring.push(cur);
            let nb = &links[&cur];
            let next = if nb[0] == prev && nb.len() > 1 { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        loops.push(ring.into_iter().map(crossing).collect());
    }
    loops
}

fn refine_loop(f: &FloatBiPoly, pts: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let n = pts.len();
    let mids: Vec<Option<[f64; 2]>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            project(f, [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0])
        })
        .collect();
    let mut out = Vec::with_capacity(2 * n);
    for (p, m) in pts.iter().zip(mids) {
        out.push(*p);
        out.extend(m);
    }
    out
}

fn trace_at(f: &FloatBiPoly, bbox: [f64; 4], n: usize) -> Vec<Oval> {
    march(f, bbox, n)
        .into_iter()
        .map(|ring| {
            let mut pts: Vec<[f64; 2]> = ring
                .into_par_iter()
                .filter_map(|p| project(f, p))
                .collect();
            for _ in 0..REFINEMENTS {
                pts = refine_loop(f, &pts);
            }
            Oval::new(pts)
        })
        .filter(|o| o.points.len() >= 3)
        .collect()
}

/// Traces the real locus inside the certified box. The oval count must agree
/// between a resolution and its double; the grid is doubled up to three
/// times to reach agreement.
pub fn sample_curve(q: &Quartic, resolution: usize) -> Result<Sampling, TraceError> {
    let f = q.float_poly();
    let bbox = q.bbox().to_f64();
    let mut n = resolution.max(8);
    let mut current = trace_at(&f, bbox, n);
    let mut counts = vec![current.len()];
    for _ in 0..=MAX_DOUBLINGS {
        let finer = trace_at(&f, bbox, 2 * n);
        counts.push(finer.len());
        if finer.len() == current.len() && !current.is_empty() {
            let spacing = current
                .iter()
                .flat_map(|o| o.segments())
                .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
                .fold(0.0, f64::max);
            return Ok(Sampling {
                ovals: current,
                resolution: n,
                spacing,
                bbox,
                counts,
            });
        }
        current = finer;
        n *= 2;
    }
    Err(TraceError::ResolutionUnstable { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::quartic::check_quartic;

    fn ovals(text: &str) -> Sampling {
        let q = check_quartic(&parse_poly(text).unwrap()).unwrap();
        sample_curve(&q, 128).unwrap()
    }

    #[test]
    fn oval_counts() {
        assert_eq!(ovals("1 - x^4 - y^4").s(), 1);
        assert_eq!(ovals("3 - 24*x^2 + 19*x^4 - 24*y^2 + 104*x^2*y^2 + 19*y^4").s(), 2);
        assert_eq!(ovals("101 - 600*x^2 + 501*x^4 - 600*y^2 + 2600*x^2*y^2 + 501*y^4").s(), 4);
    }

    #[test]
    fn samples_lie_on_the_curve() {
        let text = "9 - 10*x^2 + 2*x^4 + 6*y^2 + 2*x^2*y^2 + 2*y^4";
        let f = FloatBiPoly::new(&parse_poly(text).unwrap());
        let s = ovals(text);
        for p in s.points() {
            assert!(f.eval(p[0], p[1]).abs() <= PROJECTION_TOL * f.eval_abs(p[0], p[1]));
        }
        assert!(s.spacing < s.scale() / 128.0);
    }
}
