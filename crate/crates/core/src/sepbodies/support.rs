use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{complement_basis, det_form, diameter, dot, norm, sub};
use super::separate::split;
use super::{check_dimensions, strongly_separated, Affine, Body, SepError, Witness};

/// Relative tolerance of the certificate invariants.
pub const TOL: f64 = 1e-9;
/// Relative tolerance used to stop the iteration at every level.
const INNER_TOL: f64 = 1e-11;
pub const ITERATION_CAP: usize = 10_000;
/// Two functionals agree when their coefficient vectors have at least this cosine.
pub const AGREEMENT_COS: f64 = 1.0 - 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// The functional is nonnegative on every body.
    Nonnegative,
    /// The functional is nonpositive on every body.
    Nonpositive,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Nonnegative => 1.0,
            Orientation::Nonpositive => -1.0,
        }
    }

    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Nonnegative => Orientation::Nonpositive,
            Orientation::Nonpositive => Orientation::Nonnegative,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Nonnegative => "+",
            Orientation::Nonpositive => "-",
        })
    }
}

impl FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "pos" | "nonnegative" => Ok(Orientation::Nonnegative),
            "-" | "neg" | "nonpositive" => Ok(Orientation::Nonpositive),
            _ => Err(format!("orientation must be + or -, got {s:?}")),
        }
    }
}

/// A point of a body, with its convex weights on the body's generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Touch {
    pub point: Vec<f64>,
    pub weights: Vec<(usize, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportCert {
    /// One point per body, in body order.
    pub touch: Vec<Touch>,
    /// Determinant form of the touch points, rescaled to a unit normal.
    pub functional: Affine,
    pub orientation: Orientation,
    /// Minimum of `sign * functional` over each body.
    pub body_minima: Vec<f64>,
    /// `|functional(v_i)|` for each touch point.
    pub residuals: Vec<f64>,
    /// Outer iterations (replacements of the last body's point, plus one).
    pub iterations: usize,
    pub scale: f64,
}

impl SupportCert {
    /// `sign * functional`, nonnegative on every body.
    pub fn supporting(&self) -> Affine {
        self.functional.scaled(self.orientation.sign())
    }

    pub fn is_valid(&self) -> bool {
        let t = TOL * self.scale;
        self.body_minima.iter().all(|&m| m >= -t) && self.residuals.iter().all(|&r| r <= t)
    }

    pub fn agrees_with(&self, other: &Affine) -> bool {
        self.supporting().cosine(other) >= AGREEMENT_COS
    }
}

/// Common supporting hyperplane of `n` strongly separated bodies in `R^n`
/// through one point of each body, from the deterministic start.
pub fn support_functional(bodies: &[Body], orientation: Orientation) -> Result<SupportCert, SepError> {
    precondition(bodies)?;
    run(bodies, orientation, &mut ChaCha8Rng::seed_from_u64(0), false)
}

/// As [`support_functional`], with random starting points and random
/// projection hyperplanes at every level.
pub fn support_functional_with<R: Rng>(
    bodies: &[Body],
    orientation: Orientation,
    rng: &mut R,
) -> Result<SupportCert, SepError> {
    precondition(bodies)?;
    run(bodies, orientation, rng, true)
}

/// Runs `trials` randomized constructions in parallel and reports whether
/// all of them return the same functional up to positive scale.
pub fn uniqueness_check(
    bodies: &[Body],
    orientation: Orientation,
    trials: usize,
    seed: u64,
) -> Result<bool, SepError> {
    precondition(bodies)?;
    let certs: Vec<SupportCert> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
            run(bodies, orientation, &mut rng, true)
        })
        .collect::<Result<_, _>>()?;
    let Some(first) = certs.first() else { return Ok(true) };
    let reference = first.supporting();
    Ok(certs.iter().all(|c| c.is_valid() && c.agrees_with(&reference)))
}

fn precondition(bodies: &[Body]) -> Result<(), SepError> {
    let n = check_dimensions(bodies)?;
    if bodies.len() >= 2 {
        let sep = strongly_separated(bodies)?;
        if let Some(w) = sep.witnesses.iter().find(|w| !w.is_separated()) {
            return Err(SepError::NotSeparated { side: w.side().to_vec() });
        }
    }
    if bodies.len() != n || n == 0 {
        return Err(SepError::BodyCount {
            expected: format!("{n} (the dimension)"),
            found: bodies.len(),
        });
    }
    Ok(())
}

fn run<R: Rng>(
    bodies: &[Body],
    orientation: Orientation,
    rng: &mut R,
    randomize: bool,
) -> Result<SupportCert, SepError> {
    let clouds: Vec<Vec<Vec<f64>>> = bodies.iter().map(|b| b.points().to_vec()).collect();
    let sign = orientation.sign();
    let (touch, iterations) = solve(&clouds, sign, rng, randomize)?;
    let points: Vec<Vec<f64>> = touch.iter().map(|t| t.point.clone()).collect();
    let functional = det_form(&points).normalized();
    let scale = super::scale(bodies);
    let body_minima = bodies
        .iter()
        .map(|b| b.minimum(&functional.scaled(sign)).0)
        .collect();
    let residuals = points.iter().map(|p| functional.eval(p).abs()).collect();
    let cert = SupportCert {
        touch,
        functional,
        orientation,
        body_minima,
        residuals,
        iterations,
        scale,
    };
    if !cert.is_valid() {
        return Err(SepError::Indeterminate(format!(
            "minima {:?}, residuals {:?}",
            cert.body_minima, cert.residuals
        )));
    }
    Ok(cert)
}

/// Touch points (one per cloud) whose determinant form, times `sign`, is
/// nonnegative on every cloud; also the number of outer iterations.
fn solve<R: Rng>(
    clouds: &[Vec<Vec<f64>>],
    sign: f64,
    rng: &mut R,
    randomize: bool,
) -> Result<(Vec<Touch>, usize), SepError> {
    let n = clouds.len();
    if n == 1 {
        let (i, p) = clouds[0]
            .iter()
            .enumerate()
            .min_by(|a, b| (sign * a.1[0]).total_cmp(&(sign * b.1[0])))
            .expect("nonempty body");
        return Ok((vec![Touch { point: p.clone(), weights: vec![(i, 1.0)] }], 1));
    }
    let (others, last) = clouds.split_at(n - 1);
    let last = &last[0];
    let tol = INNER_TOL * diameter(clouds.iter().flatten());
    let mut u = if randomize { rng.gen_range(0..last.len()) } else { 0 };
    let mut negatives: Option<usize> = None;
    for iteration in 1..=ITERATION_CAP {
        let mut touch = lift(&last[u], others, sign, rng, randomize)?;
        touch.push(Touch { point: last[u].clone(), weights: vec![(u, 1.0)] });
        let points: Vec<Vec<f64>> = touch.iter().map(|t| t.point.clone()).collect();
        let l = det_form(&points).normalized().scaled(sign);
        if !l.offset.is_finite() {
            return Err(SepError::Indeterminate("touch points are affinely dependent".into()));
        }
        let values: Vec<f64> = last.iter().map(|p| l.eval(p)).collect();
        let (arg, &min) = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty body");
        if min >= -tol {
            return Ok((touch, iteration));
        }
        let count = values.iter().filter(|&&v| v < -tol).count();
        if negatives.is_some_and(|prev| count >= prev) {
            return Err(SepError::NotMonotone { iteration });
        }
        negatives = Some(count);
        u = arg;
    }
    Err(SepError::IterationCap { cap: ITERATION_CAP })
}

/// Projects the clouds centrally from `u` onto an affine hyperplane, solves
/// there, and lifts the touch points back to the clouds.
fn lift<R: Rng>(
    u: &[f64],
    clouds: &[Vec<Vec<f64>>],
    sign: f64,
    rng: &mut R,
    randomize: bool,
) -> Result<Vec<Touch>, SepError> {
    let h = direction(u, clouds, rng, randomize)?;
    let basis = complement_basis(&h);
    let mut heights: Vec<Vec<f64>> = Vec::with_capacity(clouds.len());
    let projected: Vec<Vec<Vec<f64>>> = clouds
        .iter()
        .map(|cloud| {
            let mut hs = Vec::with_capacity(cloud.len());
            let pts = cloud
                .iter()
                .map(|p| {
                    let d = sub(p, u);
                    let s = dot(&h, &d);
                    hs.push(s);
                    basis.iter().map(|e| dot(e, &d) / s).collect()
                })
                .collect();
            heights.push(hs);
            pts
        })
        .collect();
    let (inner, _) = solve(&projected, sign, rng, randomize)?;
    Ok(inner
        .into_iter()
        .zip(clouds)
        .zip(&heights)
        .map(|((t, cloud), hs)| {
            let raw: Vec<(usize, f64)> = t.weights.iter().map(|&(k, w)| (k, w / hs[k])).collect();
            let total: f64 = raw.iter().map(|w| w.1).sum();
            let weights: Vec<(usize, f64)> = raw.into_iter().map(|(k, w)| (k, w / total)).collect();
            let mut point = vec![0.0; u.len()];
            for &(k, w) in &weights {
                for (x, c) in point.iter_mut().zip(&cloud[k]) {
                    *x += w * c;
                }
            }
            Touch { point, weights }
        })
        .collect())
}

/// A direction `h` with `h . (p - u) > 0` for every point of every cloud.
fn direction<R: Rng>(
    u: &[f64],
    clouds: &[Vec<Vec<f64>>],
    rng: &mut R,
    randomize: bool,
) -> Result<Vec<f64>, SepError> {
    let a = [u.to_vec()];
    let b: Vec<&Vec<f64>> = clouds.iter().flatten().collect();
    let Witness::Separated { functional, gap, .. } = split(vec![], &[&a[0]], &b) else {
        return Err(SepError::Indeterminate("projection centre lies in the other hulls".into()));
    };
    let mut h = functional.normal;
    if randomize {
        let reach = b.iter().map(|p| norm(&sub(p, u))).fold(0.0, f64::max);
        let eps = rng.gen_range(0.0..0.5) * gap / reach;
        let r: Vec<f64> = (0..u.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let rn = norm(&r).max(f64::MIN_POSITIVE);
        for (x, y) in h.iter_mut().zip(&r) {
            *x += eps * y / rn;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(cx: f64, k: usize) -> Body {
        Body::new(
            (0..k)
                .map(|i| {
                    let t = i as f64 * std::f64::consts::TAU / k as f64;
                    vec![cx + t.cos(), t.sin()]
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn segment_minimum() {
        let b = Body::new(vec![vec![2.0], vec![1.0], vec![3.0]]).unwrap();
        let c = support_functional(std::slice::from_ref(&b), Orientation::Nonnegative).unwrap();
        assert_eq!(c.touch[0].point, vec![1.0]);
        assert_eq!((c.functional.normal[0], c.functional.offset), (1.0, -1.0));
        let c = support_functional(&[b], Orientation::Nonpositive).unwrap();
        assert_eq!(c.touch[0].point, vec![3.0]);
    }

    #[test]
    fn two_circles_outer_tangents() {
        let bodies = [circle(0.0, 100), circle(4.0, 100)];
        for o in [Orientation::Nonnegative, Orientation::Nonpositive] {
            let c = support_functional(&bodies, o).unwrap();
            assert!(c.is_valid());
            let s = c.supporting();
            // Either 1 - y or 1 + y.
            let up = Affine { normal: vec![0.0, -1.0], offset: 1.0 };
            let down = Affine { normal: vec![0.0, 1.0], offset: 1.0 };
            assert!(s.cosine(&up) > AGREEMENT_COS || s.cosine(&down) > AGREEMENT_COS, "{s:?}");
            let y = c.touch[0].point[1];
            assert!((y.abs() - 1.0).abs() < 1e-9);
            assert!((c.touch[1].point[1] - y).abs() < 1e-9);
        }
        let plus = support_functional(&bodies, Orientation::Nonnegative).unwrap();
        let minus = support_functional(&bodies, Orientation::Nonpositive).unwrap();
        assert!(!plus.agrees_with(&minus.supporting()));
        assert!(uniqueness_check(&bodies, Orientation::Nonnegative, 20, 7).unwrap());
    }

    #[test]
    fn touch_points_are_convex_combinations() {
        let bodies = [circle(0.0, 40), circle(4.0, 40)];
        let c = support_functional_with(&bodies, Orientation::Nonnegative, &mut ChaCha8Rng::seed_from_u64(3))
            .unwrap();
        for (t, b) in c.touch.iter().zip(&bodies) {
            let total: f64 = t.weights.iter().map(|w| w.1).sum();
            assert!((total - 1.0).abs() < 1e-12 && t.weights.iter().all(|w| w.1 >= 0.0));
            let mut p = vec![0.0; 2];
            for &(k, w) in &t.weights {
                p[0] += w * b.points()[k][0];
                p[1] += w * b.points()[k][1];
            }
            assert!(norm(&sub(&p, &t.point)) < 1e-12);
        }
    }

    #[test]
    fn refuses_non_separated() {
        let bodies = [circle(0.0, 30), circle(1.0, 30)];
        assert!(matches!(
            support_functional(&bodies, Orientation::Nonnegative),
            Err(SepError::NotSeparated { .. })
        ));
        assert!(matches!(
            uniqueness_check(&bodies, Orientation::Nonnegative, 3, 0),
            Err(SepError::NotSeparated { .. })
        ));
    }
}
