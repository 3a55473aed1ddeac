use rayon::prelude::*;
use serde::Serialize;

use super::lp::{phase_one, Scalar};
use super::{check_dimensions, Affine, Body, SepError};
use crate::exactpoly::{rational_from_f64, rational_to_f64, Rational};

pub const MAX_BODIES: usize = 12;

/// Outcome for one bipartition; `side` lists the bodies on the first side.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Unit-normal functional `<= -gap/2` on `side` and `>= gap/2` on the
    /// rest; the gap is positive, checked in exact arithmetic.
    Separated { side: Vec<usize>, functional: Affine, gap: f64 },
    /// A point lying in both hulls.
    Common { side: Vec<usize>, point: Vec<f64> },
}

impl Witness {
    pub fn is_separated(&self) -> bool {
        matches!(self, Witness::Separated { .. })
    }

    pub fn side(&self) -> &[usize] {
        match self {
            Witness::Separated { side, .. } | Witness::Common { side, .. } => side,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Separation {
    pub separated: bool,
    pub witnesses: Vec<Witness>,
}

/// Decides whether every bipartition of the bodies has disjoint hulls.
/// Coordinates are converted to rationals exactly, so the verdict is exact;
/// a float simplex proposes the separating functional and the exact simplex
/// runs only when that proposal fails to verify.
pub fn strongly_separated(bodies: &[Body]) -> Result<Separation, SepError> {
    if !(2..=MAX_BODIES).contains(&bodies.len()) {
        return Err(SepError::BodyCount {
            expected: format!("2..={MAX_BODIES}"),
            found: bodies.len(),
        });
    }
    check_dimensions(bodies)?;
    let m = bodies.len();
    let witnesses: Vec<Witness> = (0..(1usize << (m - 1)) - 1)
        .into_par_iter()
        .map(|k| {
            let mask = (k << 1) | 1;
            let side: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let a: Vec<&Vec<f64>> = side.iter().flat_map(|&i| bodies[i].points()).collect();
            let b: Vec<&Vec<f64>> = (0..m)
                .filter(|i| mask >> i & 1 == 0)
                .flat_map(|i| bodies[i].points())
                .collect();
            split(side, &a, &b)
        })
        .collect();
    Ok(Separation {
        separated: witnesses.iter().all(Witness::is_separated),
        witnesses,
    })
}

/// Test whether conv(a) and conv(b) are disjoint.
pub(crate) fn split(side: Vec<usize>, a: &[&Vec<f64>], b: &[&Vec<f64>]) -> Witness {
    let float = phase_one(&system(a, b, |x| x), &rhs(a[0].len()));
    if !float.feasible {
        let c: Vec<Rational> = float.y[..a[0].len()]
            .iter()
            .map(|&v| rational_from_f64(v).unwrap_or_default())
            .collect();
        if let Some(w) = certify(&side, &c, a, b) {
            return w;
        }
    }
    let exact = phase_one(
        &system(a, b, |x| rational_from_f64(x).expect("finite coordinate")),
        &rhs::<Rational>(a[0].len()),
    );
    if exact.feasible {
        let n = a[0].len();
        let point = (0..n)
            .map(|r| {
                let s: Rational = a.iter().zip(&exact.x).map(|(p, l)| exact_coord(p[r]) * l).sum();
                rational_to_f64(&s)
            })
            .collect();
        return Witness::Common { side, point };
    }
    let c = exact.y[..a[0].len()].to_vec();
    certify(&side, &c, a, b).expect("Farkas certificate separates")
}

fn exact_coord(x: f64) -> Rational {
    rational_from_f64(x).expect("finite coordinate")
}

fn system<T: Scalar>(a: &[&Vec<f64>], b: &[&Vec<f64>], conv: impl Fn(f64) -> T) -> Vec<Vec<T>> {
    let n = a[0].len();
    let mut rows: Vec<Vec<T>> = (0..n)
        .map(|r| {
            a.iter()
                .map(|p| conv(p[r]))
                .chain(b.iter().map(|p| conv(-p[r])))
                .collect()
        })
        .collect();
    rows.push(a.iter().map(|_| T::one()).chain(b.iter().map(|_| T::zero())).collect());
    rows.push(a.iter().map(|_| T::zero()).chain(b.iter().map(|_| T::one())).collect());
    rows
}

fn rhs<T: Scalar>(n: usize) -> Vec<T> {
    (0..n).map(|_| T::zero()).chain([T::one(), T::one()]).collect()
}

/// Exact check that `x -> c . x` is larger on every point of `b` than on
/// every point of `a`.
fn certify(side: &[usize], c: &[Rational], a: &[&Vec<f64>], b: &[&Vec<f64>]) -> Option<Witness> {
    let value = |p: &Vec<f64>| -> Rational { c.iter().zip(p).map(|(k, &x)| k * exact_coord(x)).sum() };
    let max_a = a.iter().map(|p| value(p)).max()?;
    let min_b = b.iter().map(|p| value(p)).min()?;
    if min_b <= max_a {
        return None;
    }
    let offset = -(&max_a + &min_b) / Rational::from_integer(2.into());
    let normal: Vec<f64> = c.iter().map(rational_to_f64).collect();
    let len = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
    let functional = Affine {
        normal,
        offset: rational_to_f64(&offset),
    }
    .scaled(1.0 / len);
    Some(Witness::Separated {
        side: side.to_vec(),
        functional,
        gap: rational_to_f64(&(min_b - max_a)) / len,
    })
}
