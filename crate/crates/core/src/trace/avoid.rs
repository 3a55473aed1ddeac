use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::TraceError;
use crate::exactpoly::{BiPoly, Rational, UniPoly};
use crate::quartic::Quartic;
use crate::roots::count_real_roots;

pub const DEFAULT_DUAL_RESOLUTION: usize = 32;
const MAX_DOUBLINGS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct AvoidanceEstimate {
    pub components: usize,
    /// Half side of the integer cube whose surface samples the dual plane.
    pub resolution: usize,
    /// Sampled lines (one per antipodal pair) that miss the real locus.
    pub avoiding: usize,
    pub sampled: usize,
    /// Component counts at each resolution tried, coarsest first.
    pub counts: Vec<usize>,
}

/// Integer coefficients of the homogenized quartic, indexed by `(i, j)` for
/// `X^i Y^j Z^(4-i-j)`.
fn integer_form(f: &BiPoly) -> Vec<((u32, u32), BigInt)> {
    let lcm = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    f.terms()
        .map(|(&k, c)| (k, c.numer() * (&lcm / c.denom())))
        .collect()
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Binary form `F(s P + t Q)` as coefficients of `s^k t^(4-k)`.
fn restrict(form: &[((u32, u32), i128)], p: [i64; 3], q: [i64; 3]) -> Option<[i128; 5]> {
    // powers[v][e]: coefficients of (p_v s + q_v t)^e, index = power of s.
    let mut powers = [[[0i128; 5]; 5]; 3];
    for v in 0..3 {
        powers[v][0][0] = 1;
        for e in 1..5 {
            for k in 0..e {
                let c = powers[v][e - 1][k];
                powers[v][e][k + 1] = powers[v][e][k + 1].checked_add(c.checked_mul(p[v] as i128)?)?;
                powers[v][e][k] = powers[v][e][k].checked_add(c.checked_mul(q[v] as i128)?)?;
            }
        }
    }
    let mut out = [0i128; 5];
    for &((i, j), c) in form {
        let l = 4 - i - j;
        let (a, b, d) = (&powers[0][i as usize], &powers[1][j as usize], &powers[2][l as usize]);
        let mut ab = [0i128; 5];
        for x in 0..=i as usize {
            for y in 0..=j as usize {
                ab[x + y] = ab[x + y].checked_add(a[x].checked_mul(b[y])?)?;
            }
        }
        for x in 0..=(i + j) as usize {
            for z in 0..=l as usize {
                let t = ab[x].checked_mul(d[z])?.checked_mul(c)?;
                out[x + z] = out[x + z].checked_add(t)?;
            }
        }
    }
    Some(out)
}

/// Whether `a x^4 + b x^3 + c x^2 + d x + e` (with `a != 0`) has a real
/// root: discriminant sign rules, with Sturm counting when the discriminant
/// vanishes.
pub fn quartic_has_real_root(coeffs: [&BigInt; 5]) -> bool {
    let [e, d, c, b, a] = coeffs;
    let disc = quartic_discriminant(a, b, c, d, e);
    if disc.is_negative() {
        return true;
    }
    if disc.is_positive() {
        let p = BigInt::from(8) * a * c - BigInt::from(3) * b * b;
        let dd = BigInt::from(64) * a * a * a * e - BigInt::from(16) * a * a * c * c
            + BigInt::from(16) * a * b * b * c
            - BigInt::from(16) * a * a * b * d
            - BigInt::from(3) * b * b * b * b;
        return p.is_negative() && dd.is_negative();
    }
    let poly = UniPoly::new(coeffs.iter().map(|c| Rational::from_integer((*c).clone())).collect());
    count_real_roots(&poly) > 0
}

pub fn quartic_discriminant(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, e: &BigInt) -> BigInt {
    let k = |n: i64| BigInt::from(n);
    let (a2, b2, c2, d2, e2) = (a * a, b * b, c * c, d * d, e * e);
    k(256) * &a2 * a * &e2 * e - k(192) * &a2 * b * d * &e2 - k(128) * &a2 * &c2 * &e2
        + k(144) * &a2 * c * &d2 * e
        - k(27) * &a2 * &d2 * &d2
        + k(144) * a * &b2 * c * &e2
        - k(6) * a * &b2 * &d2 * e
        - k(80) * a * b * &c2 * d * e
        + k(18) * a * b * c * &d2 * d
        + k(16) * a * &c2 * &c2 * e
        - k(4) * a * &c2 * c * &d2
        - k(27) * &b2 * &b2 * &e2
        + k(18) * &b2 * b * c * d * e
        - k(4) * &b2 * b * &d2 * d
        - k(4) * &b2 * &c2 * c * e
        + &b2 * &c2 * &d2
}

/// Whether the line `l . (X, Y, Z) = 0` misses the real locus.
fn avoids(form: &[((u32, u32), BigInt)], small: Option<&[((u32, u32), i128)]>, l: [i64; 3]) -> bool {
    let k = (0..3).max_by_key(|&i| l[i].abs()).unwrap();
    let mut basis = [[0i64; 3]; 2];
    for (slot, i) in (0..3).filter(|&i| i != k).enumerate() {
        let mut e = [0i64; 3];
        e[i] = 1;
        basis[slot] = cross(l, e);
    }
    let coeffs: [BigInt; 5] = match small.and_then(|s| restrict(s, basis[0], basis[1])) {
        Some(c) => c.map(BigInt::from),
        None => restrict_big(form, basis[0], basis[1]),
    };
    if coeffs[4].is_zero() {
        return false;
    }
    !quartic_has_real_root([&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3], &coeffs[4]])
}

fn restrict_big(form: &[((u32, u32), BigInt)], p: [i64; 3], q: [i64; 3]) -> [BigInt; 5] {
    let lin = |v: usize| [BigInt::from(q[v]), BigInt::from(p[v])];
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let pow = |v: usize, e: u32| -> Vec<BigInt> {
        (0..e).fold(vec![BigInt::one()], |acc, _| mul(&acc, &lin(v)))
    };
    let mut out: [BigInt; 5] = Default::default();
    for ((i, j), c) in form {
        let t = mul(&mul(&pow(0, *i), &pow(1, *j)), &pow(2, 4 - i - j));
        for (k, v) in t.into_iter().enumerate() {
            out[k] += v * c;
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Representative of `{l, -l}`: first nonzero coordinate positive.
fn canonical(l: [i64; 3]) -> [i64; 3] {
    match l.iter().find(|&&c| c != 0) {
        Some(&c) if c < 0 => l.map(|v| -v),
        _ => l,
    }
}

/// `(components, avoiding, sampled)` on the surface of the cube of half side
/// `n` in the dual space.
fn components_at(form: &[((u32, u32), BigInt)], n: usize) -> (usize, usize, usize) {
    let n = n as i64;
    let small: Option<Vec<((u32, u32), i128)>> = form
        .iter()
        .map(|(k, c)| i128::try_from(c.clone()).ok().map(|c| (*k, c)))
        .collect();
    let mut points = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                let l = [a, b, c];
                if l.iter().map(|v| v.abs()).max() == Some(n) && canonical(l) == l {
                    points.push(l);
                }
            }
        }
    }
    let flags: Vec<bool> = points
        .par_iter()
        .map(|&l| avoids(form, small.as_deref(), l))
        .collect();
    let index: HashMap<[i64; 3], usize> = points.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut uf = UnionFind((0..points.len()).collect());
    for (i, &l) in points.iter().enumerate() {
        if !flags[i] {
            continue;
        }
        for axis in 0..3 {
            for step in [-1, 1] {
                let mut m = l;
                m[axis] += step;
                if m.iter().map(|v| v.abs()).max() != Some(n) {
                    continue;
                }
                let j = index[&canonical(m)];
                if flags[j] {
                    uf.union(i, j);
                }
            }
        }
    }
    let avoiding: Vec<usize> = (0..points.len()).filter(|&i| flags[i]).collect();
    let mut roots: Vec<usize> = avoiding.iter().map(|&i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    (roots.len(), avoiding.len(), points.len())
}

/// Number of connected components of the set of real lines missing the real
/// locus, estimated on a lattice in the dual plane and required to agree
/// with the count at twice the resolution.
pub fn avoidance_components(q: &Quartic, resolution: usize) -> Result<AvoidanceEstimate, TraceError> {
    let form = integer_form(q.poly());
    let mut n = resolution.max(2);
    let (mut comps, mut avoiding, mut sampled) = components_at(&form, n);
    let mut counts = vec![comps];
    for _ in 0..=MAX_DOUBLINGS {
        let finer = components_at(&form, 2 * n);
        counts.push(finer.0);
        if finer.0 == comps {
            return Ok(AvoidanceEstimate {
                components: comps,
                resolution: n,
                avoiding,
                sampled,
                counts,
            });
        }
        (comps, avoiding, sampled) = finer;
        n *= 2;
    }
    Err(TraceError::ResolutionUnstable { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn restriction_matches_direct_substitution() {
        let f = parse_poly("3 - 24*x^2 + 19*x^4 - 24*y^2 + 104*x^2*y^2 + 19*y^4").unwrap();
        let form = integer_form(&f);
        let small: Vec<((u32, u32), i128)> =
            form.iter().map(|(k, c)| (*k, i128::try_from(c.clone()).unwrap())).collect();
        let (p, q) = ([1, 2, -1], [0, 3, 2]);
        let fast = restrict(&small, p, q).unwrap().map(BigInt::from);
        assert_eq!(fast, restrict_big(&form, p, q));
        // s = 1, t = 1 is the point p + q = (1, 5, 1).
        let sum: BigInt = fast.iter().sum();
        let direct = f.evaluate(&Rational::from_integer(1.into()), &Rational::from_integer(5.into()));
        assert_eq!(Rational::from_integer(sum), direct);
    }

    #[test]
    fn discriminant_rules() {
        let b = |v: [i64; 5]| v.map(BigInt::from);
        // (x^2 + 1)(x^2 + 4): no real roots.
        let c = b([4, 0, 5, 0, 1]);
        assert!(!quartic_has_real_root([&c[0], &c[1], &c[2], &c[3], &c[4]]));
        // (x^2 - 1)(x^2 - 4): four.
        let c = b([4, 0, -5, 0, 1]);
        assert!(quartic_has_real_root([&c[0], &c[1], &c[2], &c[3], &c[4]]));
        // (x^2 + 1)(x^2 - 2): two.
        let c = b([-2, 0, -1, 0, 1]);
        assert!(quartic_has_real_root([&c[0], &c[1], &c[2], &c[3], &c[4]]));
        // (x^2 + 1)^2: discriminant zero, no real roots.
        let c = b([1, 0, 2, 0, 1]);
        assert!(!quartic_has_real_root([&c[0], &c[1], &c[2], &c[3], &c[4]]));
    }
}
