use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, ToPrimitive, Zero};
use serde::Serialize;

use super::RootError;
use crate::exactpoly::UniPoly;

const MAX_ITERATIONS: usize = 1000;
const CLUSTER_RADIUS: f64 = 1e-6;

/// A root found by floating-point iteration. `residual` is the backward error
/// `|p(z)| / sum |a_k| |z|^k`; `flagged` is set when it exceeds the caller's
/// tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub multiplicity: usize,
    pub flagged: bool,
}

impl ComplexRoot {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn backward_error(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let scale = c.iter().rev().fold(0.0, |acc, a| acc * r + a.abs());
    let (p, _) = horner(c, z);
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Newton correction `p(z) / p'(z)`, through the reversed polynomial when
/// `|z| > 1`.
fn newton_ratio(c: &[f64], rev: &[f64], z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        let (p, dp) = horner(c, z);
        p / dp
    } else {
        let n = (c.len() - 1) as f64;
        let w = z.inv();
        let (q, dq) = horner(rev, w);
        z / (n - w * dq / q)
    }
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, log |a_k|)`.
fn initial_points(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0.0)
        .map(|(k, a)| (k, a.abs().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let sigma = 0.7;
    let two_pi = std::f64::consts::TAU;
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let radius = ((li - lj) / m as f64).exp();
        for k in 0..m {
            let theta = two_pi * k as f64 / m as f64 + two_pi * i as f64 / n as f64 + sigma;
            out.push(Complex64::from_polar(radius, theta));
        }
    }
    out
}

/// All complex roots of `c` (ascending coefficients, nonzero leading and
/// constant terms) by Aberth-Ehrlich iteration.
pub fn aberth_f64(c: &[f64]) -> Result<Vec<Complex64>, RootError> {
    let n = c.len() - 1;
    if n == 0 {
        return Err(RootError::Constant(0));
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]);
    }
    let rev: Vec<f64> = c.iter().rev().copied().collect();
    let mut z = initial_points(c);
    let mut done = vec![false; n];
    let tiny = 4.0 * f64::EPSILON;
    for _ in 0..MAX_ITERATIONS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = newton_ratio(c, &rev, z[i]);
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (1.0 - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= tiny * z[i].norm() || backward_error(c, z[i]) <= tiny {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    let worst = z
        .iter()
        .map(|&zi| backward_error(c, zi))
        .fold(0.0, f64::max);
    // Multiple roots stall the step test early; accept them once the backward
    // error is at rounding level.
    if worst <= 1e3 * f64::EPSILON {
        return Ok(z);
    }
    Err(RootError::NoConvergence {
        iterations: MAX_ITERATIONS,
        worst_residual: worst,
    })
}

/// Complex roots of `p`, clustered into multiplicities. Multiplicities sum to
/// the degree. Roots whose backward error exceeds `tol` are flagged.
pub fn complex_roots(p: &UniPoly, tol: f64) -> Result<Vec<ComplexRoot>, RootError> {
    let deg = match p.degree() {
        None | Some(0) => return Err(RootError::Constant(0)),
        Some(d) => d,
    };
    let mut c = p.to_f64_scaled();
    let zeros = c.iter().take_while(|a| **a == 0.0).count();
    c.drain(..zeros);
    let mut raw: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); zeros];
    if c.len() > 1 {
        raw.extend(aberth_f64(&c)?);
    }
    debug_assert_eq!(raw.len(), deg);
    let full = p.to_f64_scaled();

    let n = raw.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (raw[i] - raw[j]).norm();
            if d < CLUSTER_RADIUS * raw[i].norm().max(1.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[r]].push(i);
    }
    let mut out: Vec<ComplexRoot> = groups
        .into_iter()
        .map(|g| {
            let m = g.len();
            let centre = g.iter().map(|&i| raw[i]).sum::<Complex64>() / m as f64;
            let residual = backward_error(&full, centre);
            ComplexRoot {
                re: centre.re,
                im: centre.im,
                residual,
                multiplicity: m,
                flagged: !(residual <= tol),
            }
        })
        .collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// The binary value of `z` as `(X + iY) / 2^k`.
fn dyadic(z: Complex64) -> (BigInt, BigInt, u64) {
    let parts = [z.re, z.im].map(|x| {
        let (m, e, sign) = x.integer_decode();
        (BigInt::from(m) * sign, if m == 0 { 0 } else { e as i64 })
    });
    let k = (-parts[0].1.min(parts[1].1)).max(0);
    let [x, y] = parts.map(|(m, e)| m << (e + k) as usize);
    (x, y, k as u64)
}

/// `a / b` rounded once, for integers far outside the `f64` range.
fn big_quotient(a: &BigInt, b: &BigInt) -> f64 {
    let s = b.bits().saturating_sub(60) as usize;
    (a >> s).to_f64().unwrap_or(f64::NAN) / (b >> s).to_f64().unwrap_or(f64::NAN)
}

/// Newton ratio `p(z) / p'(z)` with both values computed exactly at the
/// binary value of `z`; only the final quotient is rounded.
fn exact_ratio(c: &[BigInt], dc: &[BigInt], z: Complex64) -> Complex64 {
    let (x, y, k) = dyadic(z);
    // Horner on `2^(k deg) q(z)`.
    let eval = |q: &[BigInt]| {
        let n = q.len() - 1;
        let (mut re, mut im) = (q[n].clone(), BigInt::zero());
        for (j, a) in q.iter().enumerate().rev().skip(1) {
            let r = &re * &x - &im * &y + (a << (k as usize * (n - j)));
            im = &re * &y + &im * &x;
            re = r;
        }
        (re, im)
    };
    let (pr, pi) = eval(c);
    let (dr, di) = eval(dc);
    let den = (&dr * &dr + &di * &di) << k as usize;
    if den.is_zero() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let num_re = &pr * &dr + &pi * &di;
    let num_im = &pi * &dr - &pr * &di;
    Complex64::new(big_quotient(&num_re, &den), big_quotient(&num_im, &den))
}

/// Further Aberth sweeps on a squarefree `p` with exactly evaluated Newton
/// ratios. Recovers full accuracy when double-precision evaluation is
/// swamped by cancellation (roots far from the origin relative to their
/// spread). Returns whether every root converged.
pub fn polish_roots(p: &UniPoly, z: &mut [Complex64], max_sweeps: usize) -> bool {
    let c = p.primitive_integer();
    if c.len() < 2 || z.len() != c.len() - 1 {
        return false;
    }
    let dc: Vec<BigInt> = c.iter().enumerate().skip(1).map(|(k, a)| a * k).collect();
    let n = z.len();
    let tiny = 4.0 * f64::EPSILON;
    for _ in 0..max_sweeps {
        let mut converged = true;
        for i in 0..n {
            let ratio = exact_ratio(&c, &dc, z[i]);
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (1.0 - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > tiny * z[i].norm().max(f64::MIN_POSITIVE) {
                converged = false;
            }
        }
        if converged {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourth_roots_of_unity() {
        let r = complex_roots(&UniPoly::from_i64(&[-1, 0, 0, 0, 1]), 1e-12).unwrap();
        assert_eq!(r.len(), 4);
        let expect = [(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)];
        for (got, want) in r.iter().zip(expect) {
            assert!((got.re - want.0).abs() < 1e-12 && (got.im - want.1).abs() < 1e-12);
            assert_eq!(got.multiplicity, 1);
            assert!(!got.flagged);
        }
    }

    #[test]
    fn double_root() {
        let r = complex_roots(&UniPoly::from_i64(&[4, -4, 1]), 1e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!((r[0].re - 2.0).abs() < 1e-7 && r[0].im.abs() < 1e-7);
    }

    #[test]
    fn zero_roots_and_wide_range() {
        // x^2 (x - 1e-3)(x - 1e3)
        let p = &UniPoly::from_i64(&[0, 0, 1])
            * &(&UniPoly::from_i64(&[-1, 1000]) * &UniPoly::from_i64(&[-1000, 1]));
        let r = complex_roots(&p, 1e-12).unwrap();
        let total: usize = r.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, 4);
        assert!(r.iter().any(|c| (c.re - 1e3).abs() < 1e-9));
        assert!(r.iter().any(|c| (c.re - 1e-3).abs() < 1e-15));
    }

    #[test]
    fn exact_polish_resolves_a_shifted_cluster() {
        // Roots 100 + k/8 for k = 1..=12: hopeless in the monomial basis.
        let p = (1..=12).fold(UniPoly::from_i64(&[1]), |acc, k| {
            &acc * &UniPoly::new(vec![crate::exactpoly::rat(-(800 + k), 8), crate::exactpoly::int(1)])
        });
        let mut z: Vec<Complex64> = (0..12)
            .map(|k| Complex64::from_polar(100.8, 0.3 + k as f64 * 0.5))
            .collect();
        assert!(polish_roots(&p, &mut z, 200));
        z.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (k, zk) in z.iter().enumerate() {
            let want = 100.0 + (k + 1) as f64 / 8.0;
            assert!((zk.re - want).abs() < 1e-12 * want && zk.im.abs() < 1e-12, "{zk}");
        }
    }

    #[test]
    fn constant_rejected() {
        assert!(complex_roots(&UniPoly::from_i64(&[3]), 1e-9).is_err());
    }
}
