use std::ops::{Add, Mul, Sub};

use super::ProjectiveChange;
use crate::exactpoly::{first_subresultant, int, resultant, BiPoly, UniPoly, Var};

/// The curve in a transformed chart together with the coefficients
/// `c_k(a, b)` of `f'(x, a x + b) = sum c_k x^k`, stored as polynomials in
/// the variables `(a, b)`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub change: ProjectiveChange,
    pub curve: BiPoly,
    pub coeffs: [BiPoly; 5],
}

/// Exact slope data of the non-vertical bitangents of a chart.
#[derive(Clone, Debug)]
pub struct Eliminant {
    /// Squarefree; its roots are the slopes.
    pub slopes: UniPoly,
    /// First subresultant `s1 b + s0` of the two square conditions in `b`.
    pub s1: UniPoly,
    pub s0: UniPoly,
    /// A positive multiple of `(3 c3^2 - 8 c2 c4)(a, -s0/s1) s1^2 mod slopes`:
    /// has the sign of the discriminant of the contact quadratic at every
    /// real slope.
    pub contact_sign: UniPoly,
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// With `c4 x^4 + ... + c0 = c4 (x^2 + p x + q)^2` and `p = c3 / 2c4`,
/// `q = (c2/c4 - p^2)/2`, the two remaining identities with denominators
/// cleared:
/// `8 c1 c4^2 - 4 c2 c3 c4 + c3^3` and `64 c0 c4^3 - (4 c2 c4 - c3^2)^2`.
pub(crate) fn square_conditions<T>(c: &[T; 5], times: impl Fn(&T, i64) -> T) -> (T, T)
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let c4sq = &c[4] * &c[4];
    let c3sq = &c[3] * &c[3];
    let first = &(&times(&(&c[1] * &c4sq), 8) - &times(&(&(&c[2] * &c[3]) * &c[4]), 4))
        + &(&c3sq * &c[3]);
    let inner = &times(&(&c[2] * &c[4]), 4) - &c3sq;
    let second = &times(&(&(&c[0] * &c4sq) * &c[4]), 64) - &(&inner * &inner);
    (first, second)
}

impl Chart {
    pub fn new(f: &BiPoly, change: ProjectiveChange) -> Self {
        let curve = change.pull_back(f);
        let mut coeffs: [BiPoly; 5] = Default::default();
        for (&(i, j), c) in curve.terms() {
            for l in 0..=j {
                let t = BiPoly::monomial(c * int(binom(j, l)), l, j - l);
                coeffs[(i + l) as usize] = &coeffs[(i + l) as usize] + &t;
            }
        }
        let coeffs = coeffs.map(|p| p.with_vars(['a', 'b']));
        Chart {
            change,
            curve,
            coeffs,
        }
    }

    /// `c4` depends on the slope only.
    pub fn leading(&self) -> UniPoly {
        let col = self.coeffs[4].coefficients_in(Var::Y);
        col.into_iter().next().unwrap_or_else(UniPoly::zero).with_var('a')
    }

    /// Number of vertical lines `x = c` of this chart that are bitangent;
    /// `None` when the chart's vertical point lies on the curve.
    pub fn vertical_bitangents(&self) -> Option<usize> {
        let d = self.curve.coefficients_in(Var::Y);
        if d.len() != 5 || !d[4].is_constant() {
            return None;
        }
        let d: [UniPoly; 5] = d.try_into().ok()?;
        let (s1, s2) = square_conditions(&d, |p, k| p.scalar_mul(&int(k)));
        if s1.is_zero() && s2.is_zero() {
            return None;
        }
        Some(s1.gcd(&s2).degree().unwrap_or(0))
    }

    /// Eliminates the intercept. Fails with a reason when the chart is not
    /// generic enough.
    pub fn eliminant(&self) -> Result<Eliminant, String> {
        let bp = |p: &BiPoly, k: i64| p.scalar_mul(&int(k));
        let (s1p, s2p) = square_conditions(&self.coeffs, bp);
        for p in [&s1p, &s2p] {
            if p.degree_in(Var::Y).unwrap_or(0) < 2 {
                return Err("square conditions degenerate in the intercept".into());
            }
        }
        let raw = resultant(&s1p, &s2p, Var::Y).map_err(|e| e.to_string())?;
        if raw.is_zero() {
            return Err("square conditions share a factor".into());
        }
        // Lines through a point at infinity of the chart satisfy both
        // conditions trivially (c4 = c3 = 0); strip those slopes.
        let c4 = self.leading();
        let mut e = raw.with_var('a');
        loop {
            let g = e.gcd(&c4);
            if g.is_constant() {
                break;
            }
            e = e.div_rem(&g).0;
        }
        if !e.is_squarefree() {
            return Err("eliminant has a repeated root".into());
        }
        let e = e.monic();
        let (s1, s0) = first_subresultant(&s1p, &s2p, Var::Y).map_err(|e| e.to_string())?;
        if !e.gcd(&s1).is_constant() {
            return Err("two bitangents share a slope".into());
        }
        let c = &self.coeffs;
        let three = int(3);
        let disc = &(&c[3] * &c[3]).scalar_mul(&three) - &(&c[2] * &c[4]).scalar_mul(&int(8));
        let dk = disc.coefficients_in(Var::Y);
        let mut acc = UniPoly::zero();
        let neg_s0 = -&s0;
        for (k, d) in dk.iter().enumerate() {
            let term = &(d * &neg_s0.pow(k as u32)) * &s1.pow(2 - k as u32);
            acc = &acc + &term;
        }
        let contact_sign = acc.positive_rem(&e).with_var('a');
        Ok(Eliminant {
            slopes: e,
            s1: s1.with_var('a'),
            s0: s0.with_var('a'),
            contact_sign,
        })
    }
}

impl Eliminant {
    pub fn degree(&self) -> usize {
        self.slopes.degree().unwrap_or(0)
    }

    /// Slopes at which the contact quadratic has a double root.
    pub fn hyperflex_factor(&self) -> UniPoly {
        if self.contact_sign.is_zero() {
            self.slopes.clone()
        } else {
            self.slopes.gcd(&self.contact_sign)
        }
    }
}

/// `c / 2^k`: helper for evaluating ratios of polynomials with huge
/// coefficients in floating point.
pub(crate) fn shifted_pair(num: &UniPoly, den: &UniPoly) -> (Vec<f64>, Vec<f64>) {
    let shift = num.log2_max().max(den.log2_max());
    (num.to_f64_shifted(shift), den.to_f64_shifted(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn coefficients_restrict_along_lines() {
        let f = parse_poly("1 - x^4 - y^4 + 3*x*y").unwrap();
        let ch = Chart::new(&f, ProjectiveChange::identity());
        let (a, b) = (int(2), int(-3));
        let direct = f.substitute_line(&a, &b);
        for k in 0..5 {
            assert_eq!(ch.coeffs[k].evaluate(&a, &b), direct.coeff(k));
        }
    }

    #[test]
    fn square_conditions_vanish_on_squares() {
        // 3 (x^2 - 2x + 5)^2 expanded.
        let c = [75, -60, 42, -12, 3].map(|v| UniPoly::constant(int(v)));
        let (a, b) = square_conditions(&c, |p, k| p.scalar_mul(&int(k)));
        assert!(a.is_zero() && b.is_zero());
        let c = [76, -60, 42, -12, 3].map(|v| UniPoly::constant(int(v)));
        let (_, b) = square_conditions(&c, |p, k| p.scalar_mul(&int(k)));
        assert!(!b.is_zero());
    }
}
