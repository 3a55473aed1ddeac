//! Smooth plane quartics with compact real locus: validation, the 28
//! bitangents, their reality and total reality, and the topological type
//! implied by the number of real bitangents.

mod bitangent;
mod check;
mod eliminant;
mod lines;

pub use bitangent::{bitangents, count_t, BitangentSet, MAX_ATTEMPTS};
pub use check::{check_quartic, CertifiedBox};
pub use eliminant::{Chart, Eliminant};
pub use lines::{Bitangent, ProjLine, ProjectiveChange};

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{BiPoly, FloatBiPoly, Rational};
use crate::roots::IsolatingInterval;
use crate::thetacount::CurveTopology;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuarticError {
    #[error("expected a polynomial of total degree 4, got degree {0:?}")]
    Degree(Option<u32>),
    #[error("curve is singular: {witness}")]
    Singular { witness: String },
    #[error("real locus is not compact: leading form vanishes in direction ({:.6}, {:.6})", direction.0, direction.1)]
    NonCompact { direction: (f64, f64) },
    #[error("real locus is empty")]
    EmptyRealLocus,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("no certified set of 28 bitangents after {attempts} coordinate changes ({reason}; {found} slopes resolved)")]
    CountMismatch {
        found: usize,
        attempts: usize,
        reason: String,
    },
    #[error("real-line count {real_lines} is inconsistent with {s} ovals")]
    Inconsistent { real_lines: usize, s: u32 },
}

/// A validated quartic: total degree 4, smooth in the projective plane, real
/// locus nonempty and contained in a certified box.
#[derive(Clone, Debug)]
pub struct Quartic {
    f: BiPoly,
    bbox: CertifiedBox,
    x_critical: Vec<IsolatingInterval>,
    real_witness: (Rational, Rational),
}

impl Quartic {
    pub fn poly(&self) -> &BiPoly {
        &self.f
    }

    pub fn float_poly(&self) -> FloatBiPoly {
        FloatBiPoly::new(&self.f)
    }

    pub fn bbox(&self) -> &CertifiedBox {
        &self.bbox
    }

    /// Isolating intervals of the abscissae where the curve has a vertical
    /// tangent.
    pub fn x_critical(&self) -> &[IsolatingInterval] {
        &self.x_critical
    }

    /// A point with exact abscissa whose fibre meets the curve near the given
    /// ordinate.
    pub fn real_witness(&self) -> &(Rational, Rational) {
        &self.real_witness
    }
}

/// Solves `R = 4 (2^{s-1} - 1 + a)` for `a`.
pub fn infer_topology(real_lines: usize, s: u32) -> Result<CurveTopology, QuarticError> {
    let bad = QuarticError::Inconsistent { real_lines, s };
    if s == 0 || s > 4 || !real_lines.is_multiple_of(4) {
        return Err(bad);
    }
    let a = (real_lines / 4) as i64 - (1i64 << (s - 1)) + 1;
    if a != 0 && a != 1 {
        return Err(bad);
    }
    CurveTopology::new(3, s, a == 0).map_err(|_| bad)
}

#[derive(Clone, Debug, Serialize)]
pub struct BitangentCounts {
    pub total: usize,
    pub real_lines: usize,
    pub totally_real: usize,
    pub hyperflexes: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_from_line_count() {
        let t = infer_topology(28, 4).unwrap();
        assert!(t.dividing);
        let t = infer_topology(4, 1).unwrap();
        assert!(!t.dividing);
        let t = infer_topology(4, 2).unwrap();
        assert!(t.dividing);
        assert!(infer_topology(8, 1).is_err());
        assert!(infer_topology(6, 2).is_err());
    }
}
