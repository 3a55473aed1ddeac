use std::fmt::Write;

use super::{HullReport, Sampling};
use crate::quartic::BitangentSet;

const SIZE: f64 = 800.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Static picture of the traced ovals, the hull, and the totally real
/// bitangents (solid when they support an edge).
pub fn render_svg(sampling: &Sampling, set: &BitangentSet, hull: &HullReport) -> String {
    let b = sampling.bbox;
    let pad = 0.1 * sampling.scale();
    let (x0, y1) = (b[0] - pad, b[3] + pad);
    let span = sampling.scale() + 2.0 * pad;
    let map = |p: [f64; 2]| [(p[0] - x0) / span * SIZE, (y1 - p[1]) / span * SIZE];
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let poly = |pts: &[[f64; 2]]| -> String {
        pts.iter()
            .map(|&p| {
                let [x, y] = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#f2f2f2" stroke="#999" stroke-width="1"/>"##,
        poly(&hull.hull)
    );
    for (i, oval) in sampling.ovals.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            poly(&oval.points),
            PALETTE[i % PALETTE.len()]
        );
    }

    let clip = |l: [f64; 3]| -> Option<[[f64; 2]; 2]> {
        let (xa, xb, ya, yb) = (x0, x0 + span, y1 - span, y1);
        let mut hits = Vec::new();
        if l[1].abs() > 1e-12 {
            for x in [xa, xb] {
                let y = -(l[0] * x + l[2]) / l[1];
                if (ya..=yb).contains(&y) {
                    hits.push([x, y]);
                }
            }
        }
        if l[0].abs() > 1e-12 {
            for y in [ya, yb] {
                let x = -(l[1] * y + l[2]) / l[0];
                if (xa..=xb).contains(&x) {
                    hits.push([x, y]);
                }
            }
        }
        (hits.len() >= 2).then(|| [hits[0], hits[1]])
    };
    for (k, bt) in set.bitangents.iter().enumerate() {
        if !bt.totally_real {
            continue;
        }
        let Some([a, b]) = bt.line.real_coeffs().and_then(clip) else { continue };
        let edge = hull.certs.iter().any(|c| c.bitangent == k);
        let ([ax, ay], [bx, by]) = (map(a), map(b));
        let dash = if edge { "" } else { r#" stroke-dasharray="6,4""# };
        let _ = writeln!(
            out,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="black" stroke-width="1"{dash}/>"#
        );
        if let Some(pts) = bt.real_points() {
            for (x, y) in pts {
                let [cx, cy] = map([x, y]);
                let _ = writeln!(out, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="3" fill="black"/>"#);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
