use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{det_form, norm};
use super::{check_dimensions, scale, Affine, Body, SepError, TOL};

pub const MAX_ORACLE_POINTS: usize = 2000;
/// Cap on the number of one-point-per-body tuples examined.
pub const MAX_ORACLE_TUPLES: usize = 5_000_000;
const MAX_ORACLE_DIMENSION: usize = 4;

/// A facet of the hull of the union that meets every body.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Facet {
    /// Unit-normal functional, nonnegative on every body.
    pub functional: Affine,
    /// Per body, the generators lying on the facet hyperplane.
    pub touching: Vec<Vec<usize>>,
}

/// Brute-force enumeration of the facets of `conv(K_1 ∪ ... ∪ K_n)` that
/// contain a point of every body. In general position such a facet is
/// spanned by exactly one generator of each body, so every tuple of one
/// generator per body is tested as a candidate hyperplane.
pub fn facet_oracle(bodies: &[Body]) -> Result<Vec<Facet>, SepError> {
    let n = check_dimensions(bodies)?;
    if bodies.len() != n || n == 0 {
        return Err(SepError::BodyCount {
            expected: format!("{n} (the dimension)"),
            found: bodies.len(),
        });
    }
    if n > MAX_ORACLE_DIMENSION {
        return Err(SepError::SizeCap(format!("dimension {n} > {MAX_ORACLE_DIMENSION}")));
    }
    let total: usize = bodies.iter().map(Body::len).sum();
    if total > MAX_ORACLE_POINTS {
        return Err(SepError::SizeCap(format!("{total} points > {MAX_ORACLE_POINTS}")));
    }
    let tuples = bodies.iter().try_fold(1usize, |acc, b| acc.checked_mul(b.len()));
    if tuples.is_none_or(|t| t > MAX_ORACLE_TUPLES) {
        return Err(SepError::SizeCap(format!("more than {MAX_ORACLE_TUPLES} candidate tuples")));
    }
    let tol = TOL * scale(bodies);
    let all: Vec<&Vec<f64>> = bodies.iter().flat_map(|b| b.points()).collect();
    let rest: usize = bodies[1..].iter().map(Body::len).product();

    let found: Vec<Affine> = (0..bodies[0].len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out: Vec<Affine> = Vec::new();
            for code in 0..rest {
                let mut c = code;
                let mut pts = vec![bodies[0].points()[first].clone()];
                for b in &bodies[1..] {
                    pts.push(b.points()[c % b.len()].clone());
                    c /= b.len();
                }
                let l = det_form(&pts);
                let len = norm(&l.normal);
                if !(len > 1e-300) {
                    continue;
                }
                let l = l.scaled(1.0 / len);
                let (mut pos, mut neg) = (false, false);
                for p in &all {
                    let v = l.eval(p);
                    pos |= v > tol;
                    neg |= v < -tol;
                    if pos && neg {
                        break;
                    }
                }
                match (pos, neg) {
                    (_, false) => out.push(l),
                    (false, true) => out.push(l.scaled(-1.0)),
                    _ => {}
                }
            }
            out
        })
        .collect();

    let mut unique: Vec<Affine> = Vec::new();
    for f in found {
        if !unique.iter().any(|g| g.cosine(&f) >= 1.0 - 1e-9) {
            unique.push(f);
        }
    }
    Ok(unique
        .into_iter()
        .map(|functional| {
            let touching = bodies
                .iter()
                .map(|b| {
                    (0..b.len())
                        .filter(|&k| functional.eval(&b.points()[k]).abs() <= tol)
                        .collect()
                })
                .collect();
            Facet { functional, touching }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_endpoints() {
        let b = Body::new(vec![vec![1.0], vec![4.0]]).unwrap();
        let f = facet_oracle(&[b]).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn two_circles_have_two_tangent_facets() {
        let circle = |cx: f64| {
            Body::new(
                (0..100)
                    .map(|i| {
                        let t = i as f64 * std::f64::consts::TAU / 100.0;
                        vec![cx + t.cos(), t.sin()]
                    })
                    .collect(),
            )
            .unwrap()
        };
        let f = facet_oracle(&[circle(0.0), circle(4.0)]).unwrap();
        assert_eq!(f.len(), 2);
        for facet in &f {
            assert!(facet.functional.normal[0].abs() < 1e-12);
            assert!(facet.touching.iter().all(|t| t.len() == 1));
        }
    }

    #[test]
    fn size_caps() {
        let big = Body::new((0..2001).map(|i| vec![i as f64]).collect()).unwrap();
        assert!(matches!(facet_oracle(&[big]), Err(SepError::SizeCap(_))));
    }
}
