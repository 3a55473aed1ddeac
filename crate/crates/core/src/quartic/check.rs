use num_traits::{One, Zero};

use super::{Quartic, QuarticError};
use crate::exactpoly::{
    first_subresultant, int, rat, rational_to_f64, resultant, BiPoly, Rational, UniPoly, Var,
};
use crate::roots::{
    complex_roots, count_real_roots, count_real_roots_in, isolate_real_roots, refine,
    simplest_rational_between, IsolatingInterval,
};

/// Axis-aligned box containing the whole real locus, with exact corners.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedBox {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

impl CertifiedBox {
    pub fn to_f64(&self) -> [f64; 4] {
        [
            rational_to_f64(&self.x_lo),
            rational_to_f64(&self.x_hi),
            rational_to_f64(&self.y_lo),
            rational_to_f64(&self.y_hi),
        ]
    }
}

/// Shears `x -> x + k y` tried by the affine singularity test.
const SHEARS: [(i64, i64); 6] = [(1, 3), (-2, 7), (3, 5), (-5, 11), (7, 13), (1, 17)];

pub fn check_quartic(f: &BiPoly) -> Result<Quartic, QuarticError> {
    let f = f.clone().with_vars(['x', 'y']);
    match f.total_degree() {
        Some(4) => {}
        d => return Err(QuarticError::Degree(d)),
    }
    check_compact(&f)?;
    check_smooth_at_infinity(&f)?;
    check_smooth_affine(&f)?;
    let x_crit = isolate_real_roots(&critical_values(&f, Var::Y));
    let y_crit = isolate_real_roots(&critical_values(&f, Var::X));
    let witness = real_point(&f, &x_crit).ok_or(QuarticError::EmptyRealLocus)?;
    let bbox = certified_box(&f, &x_crit, &y_crit)?;
    Ok(Quartic {
        f,
        bbox,
        x_critical: x_crit,
        real_witness: witness,
    })
}

/// `f4(1, t)`, the leading form on the chart `x = 1`.
pub(crate) fn leading_form_chart(f: &BiPoly) -> UniPoly {
    let mut c = vec![Rational::zero(); 5];
    for (&(i, j), v) in f.homogeneous_part(4).terms() {
        debug_assert_eq!(i + j, 4);
        c[j as usize] = v.clone();
    }
    UniPoly::new(c).with_var('t')
}

fn check_compact(f: &BiPoly) -> Result<(), QuarticError> {
    if f.coeff(0, 4).is_zero() {
        return Err(QuarticError::NonCompact { direction: (0.0, 1.0) });
    }
    let lf = leading_form_chart(f);
    if let Some(iv) = isolate_real_roots(&lf).first() {
        let r = refine(&lf, iv, &rat(1, 1 << 40));
        let t = rational_to_f64(&r.midpoint());
        let n = (1.0 + t * t).sqrt();
        return Err(QuarticError::NonCompact {
            direction: (1.0 / n, t / n),
        });
    }
    Ok(())
}

/// A point at infinity is singular iff it is a repeated root of the leading
/// form on which the cubic part also vanishes.
fn check_smooth_at_infinity(f: &BiPoly) -> Result<(), QuarticError> {
    let lf = leading_form_chart(f);
    let rep = lf.gcd(&lf.derivative());
    if rep.is_constant() {
        return Ok(());
    }
    let mut c3 = vec![Rational::zero(); 4];
    for (&(_, j), v) in f.homogeneous_part(3).terms() {
        c3[j as usize] = v.clone();
    }
    let common = rep.gcd(&UniPoly::new(c3));
    if common.is_constant() && !common.is_zero() {
        return Ok(());
    }
    let t = complex_roots(&common.squarefree(), 1e-10)
        .ok()
        .and_then(|r| r.first().copied())
        .map(|r| format!(" (1 : {:.6}{:+.6}i : 0)", r.re, r.im))
        .unwrap_or_default();
    Err(QuarticError::Singular {
        witness: format!("singular point at infinity{t}"),
    })
}

enum Affine {
    Smooth,
    Singular(String),
    Inconclusive,
}

fn check_smooth_affine(f: &BiPoly) -> Result<(), QuarticError> {
    for (n, d) in SHEARS {
        let k = rat(n, d);
        let m = [
            [Rational::one(), k.clone(), Rational::zero()],
            [Rational::zero(), Rational::one(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::one()],
        ];
        let g = f.projective_pullback(&m);
        match affine_singularities(&g, &k) {
            Affine::Smooth => return Ok(()),
            Affine::Singular(w) => return Err(QuarticError::Singular { witness: w }),
            Affine::Inconclusive => continue,
        }
    }
    Err(QuarticError::Singular {
        witness: "every sheared projection has a repeated critical fibre".into(),
    })
}

/// Singular points of `g` (the curve sheared by `x -> x + k y`), decided
/// exactly in `Q[x] / h` where `h` collects the candidate abscissae.
fn affine_singularities(g: &BiPoly, k: &Rational) -> Affine {
    let gx = g.derivative(Var::X);
    let gy = g.derivative(Var::Y);
    if gx.is_zero() || gy.is_zero() {
        return Affine::Singular("curve is a union of parallel lines".into());
    }
    let r1 = resultant(g, &gx, Var::Y).expect("nonzero inputs");
    let r2 = resultant(g, &gy, Var::Y).expect("nonzero inputs");
    if r1.is_zero() || r2.is_zero() {
        return Affine::Singular("polynomial shares a factor with a partial derivative".into());
    }
    let h = r1.gcd(&r2);
    if h.is_constant() {
        return Affine::Smooth;
    }
    let h = h.squarefree();
    if gx.degree_in(Var::Y).unwrap_or(0) < 2 {
        return Affine::Inconclusive;
    }
    let lc = gx.coefficients_in(Var::Y).pop().unwrap();
    if !h.gcd(&lc).is_constant() {
        return Affine::Inconclusive;
    }
    let Ok((s1, s0)) = first_subresultant(g, &gx, Var::Y) else {
        return Affine::Inconclusive;
    };
    let Some(inv) = s1.inverse_mod(&h) else {
        return Affine::Inconclusive;
    };
    // The unique common root of g and g_x over each root of h.
    let y_of_x = (&(-&s0) * &inv).rem(&h);
    debug_assert!(g.substitute_y(&y_of_x).rem(&h).is_zero());
    let t = gy.substitute_y(&y_of_x).rem(&h);
    let sing = if t.is_zero() { h.clone() } else { h.gcd(&t) };
    if sing.is_constant() {
        return Affine::Smooth;
    }
    let kf = rational_to_f64(k);
    let witness = complex_roots(&sing, 1e-10)
        .ok()
        .and_then(|r| r.first().copied())
        .map(|r| {
            let x = r.z();
            let y = y_of_x.eval_complex(x);
            let xo = x + y * kf;
            format!(
                "singular point near ({:.6}{:+.6}i, {:.6}{:+.6}i)",
                xo.re, xo.im, y.re, y.im
            )
        })
        .unwrap_or_else(|| "singular point (root location unavailable)".into());
    Affine::Singular(witness)
}

/// `Res_v(f, df/dv)`: its real roots contain the extreme values of the other
/// coordinate on every oval.
pub(crate) fn critical_values(f: &BiPoly, v: Var) -> UniPoly {
    resultant(f, &f.derivative(v), v).expect("nonzero inputs")
}

/// A real point of the curve found by probing fibres between consecutive
/// critical abscissae.
fn real_point(f: &BiPoly, x_crit: &[IsolatingInterval]) -> Option<(Rational, Rational)> {
    for w in x_crit.windows(2) {
        let (a, b) = (&w[0].hi, &w[1].lo);
        let span = b - a;
        let x0 = simplest_rational_between(&(a + &span / int(4)), &(b - &span / int(4)));
        let fibre = f.restrict_x(&x0);
        if let Some(iv) = isolate_real_roots(&fibre).first() {
            return Some((x0, iv.midpoint()));
        }
    }
    None
}

fn certified_box(
    f: &BiPoly,
    x_crit: &[IsolatingInterval],
    y_crit: &[IsolatingInterval],
) -> Result<CertifiedBox, QuarticError> {
    let range = |c: &[IsolatingInterval]| -> (Rational, Rational) {
        let lo = c.first().unwrap().lo.clone();
        let hi = c.last().unwrap().hi.clone();
        let pad = (&hi - &lo) / int(16) + rat(1, 64);
        (lo - &pad, hi + pad)
    };
    if x_crit.is_empty() || y_crit.is_empty() {
        return Err(QuarticError::EmptyRealLocus);
    }
    let (x_lo, x_hi) = range(x_crit);
    let (y_lo, y_hi) = range(y_crit);
    let edges = [
        (f.restrict_x(&x_lo), &y_lo, &y_hi),
        (f.restrict_x(&x_hi), &y_lo, &y_hi),
        (f.restrict_y(&y_lo), &x_lo, &x_hi),
        (f.restrict_y(&y_hi), &x_lo, &x_hi),
    ];
    for (p, lo, hi) in &edges {
        if p.sign_at(lo).is_eq() || count_real_roots_in(p, lo, hi) != 0 {
            return Err(QuarticError::Degenerate(
                "curve meets its computed bounding box".into(),
            ));
        }
    }
    // Fibres just outside the critical range must miss the curve entirely.
    debug_assert_eq!(count_real_roots(&f.restrict_x(&x_lo)), 0);
    Ok(CertifiedBox {
        x_lo,
        x_hi,
        y_lo,
        y_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn fermat_accepted() {
        let q = check_quartic(&parse_poly("1 - x^4 - y^4").unwrap()).unwrap();
        let b = q.bbox().to_f64();
        assert!(b[0] < -1.0 && b[1] > 1.0 && b[2] < -1.0 && b[3] > 1.0);
    }

    #[test]
    fn double_conic_singular() {
        let f = parse_poly("(x^2 + y^2 - 1)^2").unwrap();
        assert!(matches!(check_quartic(&f), Err(QuarticError::Singular { .. })));
    }

    #[test]
    fn indefinite_leading_form() {
        let f = parse_poly("x^4 - y^4 + 1").unwrap();
        assert!(matches!(check_quartic(&f), Err(QuarticError::NonCompact { .. })));
    }

    #[test]
    fn node_detected() {
        // Two ellipses crossing transversally: four real nodes.
        let f = parse_poly("(x^2 + 4*y^2 - 4)*(4*x^2 + y^2 - 4)").unwrap();
        assert!(matches!(check_quartic(&f), Err(QuarticError::Singular { .. })));
        // A smooth perturbation of it is accepted.
        let g = parse_poly("(x^2 + 4*y^2 - 4)*(4*x^2 + y^2 - 4) - 1").unwrap();
        assert!(check_quartic(&g).is_ok());
    }

    #[test]
    fn empty_locus() {
        let f = parse_poly("x^4 + y^4 + 1").unwrap();
        assert_eq!(check_quartic(&f).unwrap_err(), QuarticError::EmptyRealLocus);
    }

    #[test]
    fn wrong_degree() {
        let f = parse_poly("x^2 + y^2 - 1").unwrap();
        assert_eq!(check_quartic(&f).unwrap_err(), QuarticError::Degree(Some(2)));
    }
}
