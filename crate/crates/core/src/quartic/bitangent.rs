use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use super::eliminant::{shifted_pair, square_conditions};
use super::{Bitangent, BitangentCounts, Chart, Eliminant, ProjLine, ProjectiveChange, Quartic, QuarticError};
use crate::exactpoly::{int, rational_to_f64, BiPoly, FloatBiPoly, Rational, UniPoly};
use crate::roots::{
    complex_roots, count_real_roots_in, isolate_real_roots, polish_roots, refine, ComplexRoot, IsolatingInterval,
};

/// First try plus five retries with fresh coordinate changes.
pub const MAX_ATTEMPTS: usize = 6;
const EXPECTED: usize = 28;
const RESIDUAL_TOL: f64 = 1e-8;
const MATCH_TOL: f64 = 1e-6;
/// Relative contact discriminants below this are decided exactly.
const CONTACT_TOL: f64 = 1e-6;
const POLISH_SWEEPS: usize = 100;

/// The 28 bitangents of a quartic and the chart they were computed in.
#[derive(Clone, Debug, Serialize)]
pub struct BitangentSet {
    pub bitangents: Vec<Bitangent>,
    pub change: ProjectiveChange,
    pub attempts: usize,
}

impl BitangentSet {
    pub fn counts(&self) -> BitangentCounts {
        BitangentCounts {
            total: self.bitangents.len(),
            real_lines: self.bitangents.iter().filter(|b| b.real_line).count(),
            totally_real: self.bitangents.iter().filter(|b| b.totally_real).count(),
            hyperflexes: self
                .bitangents
                .iter()
                .filter(|b| b.real_line && b.degenerate)
                .count(),
        }
    }

    pub fn real_lines(&self) -> usize {
        self.counts().real_lines
    }

    pub fn max_residual(&self) -> f64 {
        self.bitangents.iter().map(|b| b.residual).fold(0.0, f64::max)
    }

    /// Every line's complex conjugate is in the set, up to `tol`.
    pub fn conjugation_closed(&self, tol: f64) -> bool {
        self.bitangents.iter().all(|b| {
            let partner = b.line.conj();
            self.bitangents.iter().any(|o| o.line.distance(&partner) < tol)
        })
    }
}

/// Number of totally real bitangents. Hyperflexes have coincident contact
/// points and are never counted.
pub fn count_t(set: &BitangentSet) -> usize {
    set.counts().totally_real
}

struct Failure {
    found: usize,
    reason: String,
    degenerate: bool,
}

impl Failure {
    fn count(found: usize, reason: impl Into<String>) -> Self {
        Failure {
            found,
            reason: reason.into(),
            degenerate: false,
        }
    }
}

pub fn bitangents<R: Rng + ?Sized>(q: &Quartic, rng: &mut R) -> Result<BitangentSet, QuarticError> {
    let mut last = Failure::count(0, "no attempt made");
    let mut all_degenerate = true;
    for attempt in 1..=MAX_ATTEMPTS {
        let change = ProjectiveChange::random(rng);
        match in_chart(q.poly(), change) {
            Ok(bitangents) => {
                return Ok(BitangentSet {
                    bitangents,
                    change,
                    attempts: attempt,
                })
            }
            Err(f) => {
                all_degenerate &= f.degenerate;
                last = f;
            }
        }
    }
    if all_degenerate {
        Err(QuarticError::Degenerate(last.reason))
    } else {
        Err(QuarticError::CountMismatch {
            found: last.found,
            attempts: MAX_ATTEMPTS,
            reason: last.reason,
        })
    }
}

fn in_chart(f: &BiPoly, change: ProjectiveChange) -> Result<Vec<Bitangent>, Failure> {
    let chart = Chart::new(f, change);
    match chart.vertical_bitangents() {
        None => return Err(Failure::count(0, "vertical point of the chart lies on the curve")),
        Some(0) => {}
        Some(n) => return Err(Failure::count(n, "chart has vertical bitangents")),
    }
    let el = chart.eliminant().map_err(|reason| Failure {
        found: 0,
        degenerate: reason.contains("repeated") || reason.contains("share a slope"),
        reason,
    })?;
    if el.degree() != EXPECTED {
        return Err(Failure::count(el.degree(), "eliminant has the wrong degree"));
    }
    let slopes = slopes(&el)?;
    let solver = Solver::new(&chart, &el);

    let mut out = Vec::with_capacity(EXPECTED);
    let flex = el.hyperflex_factor();
    for (alpha, iv) in slopes.real_values.iter().zip(&slopes.real) {
        let (mut bt, contact) = solver.bitangent(Complex64::new(*alpha, 0.0), true)?;
        let degenerate = is_hyperflex(&flex, iv);
        let positive = !degenerate
            && if contact.abs() > CONTACT_TOL {
                contact > 0.0
            } else {
                sign_at_root(&el.contact_sign, &el.slopes, iv) == Ordering::Greater
            };
        bt.degenerate = degenerate;
        bt.totally_real = positive && !degenerate;
        if bt.totally_real {
            bt.points = bt.points.map(|p| p.map(|z| Complex64::new(z.re, 0.0)));
        }
        out.push(bt);
    }
    for z in &slopes.upper {
        let (bt, _) = solver.bitangent(*z, false)?;
        out.push(bt.conj());
        out.push(bt);
    }
    for (i, a) in out.iter().enumerate() {
        if a.residual > RESIDUAL_TOL {
            return Err(Failure::count(EXPECTED, format!("residual {:.2e} too large", a.residual)));
        }
        for b in &out[i + 1..] {
            if a.line.distance(&b.line) < MATCH_TOL {
                return Err(Failure::count(EXPECTED, "two slopes converged to one line"));
            }
        }
    }
    Ok(out)
}

struct Slopes {
    real: Vec<IsolatingInterval>,
    real_values: Vec<f64>,
    /// Non-real slopes with positive imaginary part; their conjugates are the
    /// remaining slopes.
    upper: Vec<Complex64>,
}

/// Real slopes from the exact engine, non-real ones from the float engine,
/// each cross-checked against the other.
fn slopes(el: &Eliminant) -> Result<Slopes, Failure> {
    let p = &el.slopes;
    let real = isolate_real_roots(p);
    let real: Vec<IsolatingInterval> = real
        .iter()
        .map(|iv| {
            let mag = iv.lo.abs().max(iv.hi.abs()).max(Rational::from_integer(1.into()));
            refine(p, iv, &(mag / Rational::from_integer(num_bigint::BigInt::from(1u64 << 56))))
        })
        .collect();
    let real_values: Vec<f64> = real.iter().map(|iv| rational_to_f64(&iv.midpoint())).collect();
    let roots = complex_roots(p, 1e-10)
        .map_err(|e| Failure::count(0, format!("float root finder failed: {e}")))?;
    let mut roots = roots;
    if roots.iter().any(|r| r.multiplicity > 1) {
        return Err(Failure {
            found: roots.len(),
            reason: "slopes too close to separate in floating point".into(),
            degenerate: false,
        });
    }
    let mut z: Vec<Complex64> = roots.iter().map(|r| r.z()).collect();
    if !polish_roots(p, &mut z, POLISH_SWEEPS) {
        return Err(Failure::count(roots.len(), "slope polishing did not converge"));
    }
    for (r, z) in roots.iter_mut().zip(z) {
        (r.re, r.im) = (z.re, z.im);
    }
    let mut used = vec![false; roots.len()];
    for &a in &real_values {
        let best = nearest(&roots, &used, Complex64::new(a, 0.0));
        match best {
            Some((i, d)) if d <= MATCH_TOL * a.abs().max(1.0) => used[i] = true,
            _ => return Err(Failure::count(real.len(), "float roots miss an exact real slope")),
        }
    }
    let mut upper = Vec::new();
    let rest: Vec<usize> = (0..roots.len()).filter(|&i| !used[i]).collect();
    for &i in &rest {
        let z = roots[i].z();
        if z.im > 0.0 && !used[i] {
            used[i] = true;
            match nearest(&roots, &used, z.conj()) {
                Some((j, d)) if d <= MATCH_TOL * z.norm().max(1.0) && roots[j].im < 0.0 => {
                    used[j] = true;
                    upper.push(z);
                }
                _ => return Err(Failure::count(real.len() + 2 * upper.len(), "unpaired non-real slope")),
            }
        }
    }
    if used.iter().any(|u| !u) {
        return Err(Failure::count(real.len() + 2 * upper.len(), "real-looking slope rejected by exact count"));
    }
    Ok(Slopes {
        real,
        real_values,
        upper,
    })
}

fn nearest(roots: &[ComplexRoot], used: &[bool], z: Complex64) -> Option<(usize, f64)> {
    roots
        .iter()
        .enumerate()
        .filter(|(i, _)| !used[*i])
        .map(|(i, r)| (i, (r.z() - z).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Whether the real slope isolated by `iv` is a root of the hyperflex
/// factor, decided exactly.
fn is_hyperflex(flex: &UniPoly, iv: &IsolatingInterval) -> bool {
    !flex.is_constant()
        && (flex.sign_at(&iv.lo) == Ordering::Equal || (!iv.exact && count_real_roots_in(flex, &iv.lo, &iv.hi) > 0))
}

/// Sign of `p` at the root of `base` isolated by `iv`, where `p` is known not
/// to vanish: the interval is narrowed until `|p(mid)|` exceeds a bound on the
/// variation of `p` across it.
fn sign_at_root(p: &UniPoly, base: &UniPoly, iv: &IsolatingInterval) -> Ordering {
    let slope_bound: Vec<Rational> = p.derivative().coeffs().iter().map(|c| c.abs()).collect();
    let two = Rational::from_integer(2.into());
    let mut iv = iv.clone();
    loop {
        if iv.exact {
            return p.sign_at(&iv.lo);
        }
        let m = iv.midpoint();
        let r = iv.lo.abs().max(iv.hi.abs());
        let lipschitz = slope_bound
            .iter()
            .rev()
            .fold(Rational::from_integer(0.into()), |acc, c| acc * &r + c);
        let v = p.eval(&m);
        if v.abs() > lipschitz * iv.width() / &two {
            return if v.is_positive() { Ordering::Greater } else { Ordering::Less };
        }
        let tol = iv.width() / Rational::from_integer(256.into());
        iv = refine(base, &iv, &tol);
    }
}

/// Float data for polishing `(a, b, p, q)` against
/// `f'(x, a x + b) = c4(a) (x^2 + p x + q)^2`.
struct Solver {
    change: ProjectiveChange,
    coeffs: Vec<FloatBiPoly>,
    s0: Vec<f64>,
    s1: Vec<f64>,
    cubic: FloatBiPoly,
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &v| acc * z + v)
}

/// Roots of a low-degree complex polynomial (ascending coefficients) by
/// Durand-Kerner iteration.
fn small_roots(c: &[Complex64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let lc = *c.last().unwrap();
    let c: Vec<Complex64> = c.iter().map(|z| z / lc).collect();
    let n = c.len() - 1;
    let radius = 1.0 + c[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + k as f64 * std::f64::consts::TAU / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let num = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &v| acc * z[i] + v);
            let den = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if den.norm() == 0.0 {
                continue;
            }
            let d = num / den;
            z[i] -= d;
            moved = moved.max(d.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn solve4(mut m: [[Complex64; 5]; 4]) -> Option<[Complex64; 4]> {
    for k in 0..4 {
        let p = (k..4).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))?;
        if m[p][k].norm() == 0.0 {
            return None;
        }
        m.swap(k, p);
        for i in k + 1..4 {
            let f = m[i][k] / m[k][k];
            for j in k..5 {
                let v = m[k][j];
                m[i][j] -= f * v;
            }
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for k in (0..4).rev() {
        let mut s = m[k][4];
        for j in k + 1..4 {
            s -= m[k][j] * x[j];
        }
        x[k] = s / m[k][k];
    }
    Some(x)
}

impl Solver {
    fn new(chart: &Chart, el: &Eliminant) -> Self {
        let (s0, s1) = shifted_pair(&el.s0, &el.s1);
        let (cubic, _) = square_conditions(&chart.coeffs, |p, k| p.scalar_mul(&int(k)));
        Solver {
            cubic: FloatBiPoly::new(&cubic),
            change: chart.change,
            coeffs: chart.coeffs.iter().map(FloatBiPoly::new).collect(),
            s0,
            s1,
        }
    }

    /// Residuals `G3..G0`, their Jacobian in `(a, b, p, q)`, and the scale
    /// `max |c_k|`.
    fn system(&self, v: [Complex64; 4]) -> ([Complex64; 4], [[Complex64; 4]; 4], f64) {
        let [a, b, p, q] = v;
        let c: Vec<(Complex64, Complex64, Complex64)> =
            self.coeffs.iter().map(|cf| cf.eval_grad_complex(a, b)).collect();
        let (c4, c4a, _) = c[4];
        let two = Complex64::new(2.0, 0.0);
        let g = [
            c[3].0 - two * c4 * p,
            c[2].0 - c4 * (p * p + two * q),
            c[1].0 - two * c4 * p * q,
            c[0].0 - c4 * q * q,
        ];
        let zero = Complex64::new(0.0, 0.0);
        let j = [
            [c[3].1 - two * p * c4a, c[3].2, -two * c4, zero],
            [c[2].1 - (p * p + two * q) * c4a, c[2].2, -two * c4 * p, -two * c4],
            [c[1].1 - two * p * q * c4a, c[1].2, -two * c4 * q, -two * c4 * p],
            [c[0].1 - q * q * c4a, c[0].2, zero, -two * c4 * q],
        ];
        let scale = c.iter().map(|t| t.0.norm()).fold(0.0, f64::max);
        (g, j, scale)
    }

    fn residual(&self, v: [Complex64; 4]) -> f64 {
        let (g, _, scale) = self.system(v);
        g.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
    }

    /// Starting point with `(p, q)` read off from `c3` and `c2`.
    fn start(&self, a: Complex64, b: Complex64) -> [Complex64; 4] {
        let c: Vec<Complex64> = self.coeffs.iter().map(|cf| cf.eval_complex(a, b)).collect();
        let p = c[3] / (c[4] * 2.0);
        let q = (c[2] / c[4] - p * p) / 2.0;
        [a, b, p, q]
    }

    /// The subresultant gives the intercept directly; when it is badly
    /// conditioned near a slope the roots of the cubic condition are tried
    /// as well.
    fn initial(&self, a: Complex64) -> [Complex64; 4] {
        let mut best = self.start(a, -horner(&self.s0, a) / horner(&self.s1, a));
        let mut best_res = self.residual(best);
        if best_res.is_finite() && best_res < 1e-6 {
            return best;
        }
        for b in small_roots(&self.cubic.restrict_x(a)) {
            let v = self.start(a, b);
            let r = self.residual(v);
            if r < best_res || !best_res.is_finite() {
                best = v;
                best_res = r;
            }
        }
        best
    }

    /// The polished bitangent and the relative discriminant of its contact
    /// quadratic (real part).
    fn bitangent(&self, a0: Complex64, real: bool) -> Result<(Bitangent, f64), Failure> {
        let mut v = self.initial(a0);
        let mut residual = self.residual(v);
        for _ in 0..60 {
            let (g, j, _) = self.system(v);
            let mut m = [[Complex64::new(0.0, 0.0); 5]; 4];
            for r in 0..4 {
                m[r][..4].copy_from_slice(&j[r]);
                m[r][4] = -g[r];
            }
            let Some(step) = solve4(m) else { break };
            let size: f64 = step.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let mag: f64 = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
            // Damped step: halve until the residual does not grow.
            let mut t = 1.0;
            let mut next = v;
            let mut next_res = f64::INFINITY;
            for _ in 0..30 {
                for k in 0..4 {
                    next[k] = v[k] + step[k] * t;
                    if real {
                        next[k].im = 0.0;
                    }
                }
                next_res = self.residual(next);
                if next_res <= residual || t * size <= 1e-15 * mag {
                    break;
                }
                t /= 2.0;
            }
            if !(next_res <= residual) {
                break;
            }
            v = next;
            residual = next_res;
            if t * size <= 1e-15 * mag || residual <= 1e-15 {
                break;
            }
        }
        if !residual.is_finite() {
            return Err(Failure::count(0, "Newton polishing diverged"));
        }
        let [a, b, p, q] = v;
        let disc = p * p - q * 4.0;
        let root = disc.sqrt();
        let one = Complex64::new(1.0, 0.0);
        let points = [(-p + root) / 2.0, (-p - root) / 2.0].map(|x| {
            let y = a * x + b;
            let pt = self.change.push_point([x, y, one]);
            let s = pt.iter().map(|z| z.norm()).fold(0.0, f64::max);
            pt.map(|z| z / s)
        });
        let line = ProjLine::new(self.change.push_line([a, -one, b]), real);
        let contact = disc.re / (p.norm_sqr() + q.norm()).max(f64::MIN_POSITIVE);
        let bt = Bitangent {
            line,
            points,
            real_line: real,
            totally_real: false,
            degenerate: contact.abs() <= CONTACT_TOL && disc.im.abs() <= CONTACT_TOL,
            residual,
        };
        Ok((bt, contact))
    }
}
