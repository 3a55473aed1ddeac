use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::exactpoly::{int, BiPoly, Rational};

/// Invertible integer `3 x 3` matrix acting on homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveChange {
    pub m: [[i64; 3]; 3],
}

impl ProjectiveChange {
    pub fn identity() -> Self {
        ProjectiveChange {
            m: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
    }

    /// Diagonal in `3..=5`, off-diagonal in `-2..=2`, bottom row not
    /// proportional to `(0, 0, 1)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut m = [[0i64; 3]; 3];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = if i == j {
                        rng.gen_range(3..=5)
                    } else {
                        rng.gen_range(-2..=2)
                    };
                }
            }
            let t = ProjectiveChange { m };
            if t.det() != 0 && (m[2][0] != 0 || m[2][1] != 0) {
                return t;
            }
        }
    }

    pub fn det(&self) -> i64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Adjugate: `adj(M) M = det(M) I`.
    pub fn adjugate(&self) -> [[i64; 3]; 3] {
        let m = &self.m;
        let mut a = [[0i64; 3]; 3];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                *v = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            }
        }
        a
    }

    pub fn rational(&self) -> [[Rational; 3]; 3] {
        self.m.map(|row| row.map(int))
    }

    /// The curve in new coordinates: `f'(X') = F(M X')`.
    pub fn pull_back(&self, f: &BiPoly) -> BiPoly {
        f.projective_pullback(&self.rational())
    }

    /// `X = M X'`.
    pub fn push_point(&self, p: [Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, &pj) in p.iter().enumerate() {
                *o += pj * self.m[i][j] as f64;
            }
        }
        out
    }

    /// A line `L' . X' = 0` becomes `L . X = 0` with `L` proportional to
    /// `M^{-T} L'`.
    pub fn push_line(&self, l: [Complex64; 3]) -> [Complex64; 3] {
        let a = self.adjugate();
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, &lj) in l.iter().enumerate() {
                *o += lj * a[j][i] as f64;
            }
        }
        out
    }
}

/// Line `u x + v y + w = 0`, unit norm, first non-negligible coefficient
/// positive real.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProjLine {
    pub coeffs: [Complex64; 3],
    pub real: bool,
}

const PHASE_THRESHOLD: f64 = 1e-9;

impl ProjLine {
    pub fn new(c: [Complex64; 3], real: bool) -> Self {
        let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut c = c.map(|z| z / norm);
        if let Some(k) = c.iter().position(|z| z.norm() > PHASE_THRESHOLD) {
            let phase = c[k].conj() / c[k].norm();
            c = c.map(|z| z * phase);
        }
        if real {
            c = c.map(|z| Complex64::new(z.re, 0.0));
        }
        ProjLine { coeffs: c, real }
    }

    pub fn real_coeffs(&self) -> Option<[f64; 3]> {
        self.real.then(|| self.coeffs.map(|z| z.re))
    }

    /// Sine of the angle between the lines as points of the dual plane.
    pub fn distance(&self, other: &ProjLine) -> f64 {
        let inner: Complex64 = other
            .coeffs
            .iter()
            .zip(&self.coeffs)
            .map(|(b, a)| b.conj() * a)
            .sum();
        // Norm of the part of `self` orthogonal to `other`.
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - inner * b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn conj(&self) -> ProjLine {
        ProjLine::new(self.coeffs.map(|z| z.conj()), self.real)
    }
}

/// A bitangent line with its two points of contact (homogeneous).
#[derive(Clone, Debug, Serialize)]
pub struct Bitangent {
    pub line: ProjLine,
    pub points: [[Complex64; 3]; 2],
    pub real_line: bool,
    pub totally_real: bool,
    /// Contact points coincide: the line is a hyperflex.
    pub degenerate: bool,
    /// Largest coefficient of `f|line - c (x^2 + p x + q)^2` relative to the
    /// coefficients of `f|line`.
    pub residual: f64,
}

impl Bitangent {
    /// Affine contact points, when both are real and finite.
    pub fn real_points(&self) -> Option<[(f64, f64); 2]> {
        let mut out = [(0.0, 0.0); 2];
        for (o, p) in out.iter_mut().zip(&self.points) {
            let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if p[2].norm() < 1e-12 * scale || p.iter().any(|z| z.im.abs() > 1e-9 * scale) {
                return None;
            }
            *o = ((p[0] / p[2]).re, (p[1] / p[2]).re);
        }
        Some(out)
    }

    pub fn conj(&self) -> Bitangent {
        Bitangent {
            line: self.line.conj(),
            points: self.points.map(|p| p.map(|z| z.conj())),
            ..self.clone()
        }
    }
}
