//! Resultants, subresultants and discriminants.
//!
//! Small Sylvester systems use a fraction-free Bareiss determinant; larger
//! ones fall back to the subresultant polynomial remainder sequence.

use super::{int, BiPoly, PolyError, Rational, Ring, UniPoly, Var};

/// Degree sum above which [`resultant_coeffs`] switches to the remainder
/// sequence.
const BAREISS_LIMIT: usize = 12;

/// Determinant by fraction-free Gaussian elimination. Every division is exact.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.negated()
    } else {
        d
    }
}

fn trim<R: Ring>(p: &[R]) -> &[R] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), coefficients given
/// in ascending order: n shifted rows of `p` followed by m shifted rows of `q`.
pub fn sylvester_matrix<R: Ring>(p: &[R], q: &[R]) -> Vec<Vec<R>> {
    subresultant_matrix(p, q, 0, 0)
}

/// Rows `x^{n-j-1} p, .., p, x^{m-j-1} q, .., q` restricted to the first
/// `m+n-2j-1` columns plus the column of `x^i` (for `j = 0` this is the
/// Sylvester matrix).
fn subresultant_matrix<R: Ring>(p: &[R], q: &[R], j: usize, i: usize) -> Vec<Vec<R>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let width = m + n - j;
    let rows_p = n - j;
    let rows_q = m - j;
    let mut full = Vec::with_capacity(rows_p + rows_q);
    // Column c holds the coefficient of x^{width-1-c}.
    for r in 0..rows_p {
        let shift = rows_p - 1 - r;
        let mut row = vec![R::zero(); width];
        for (k, c) in p.iter().enumerate() {
            row[width - 1 - (k + shift)] = c.clone();
        }
        full.push(row);
    }
    for r in 0..rows_q {
        let shift = rows_q - 1 - r;
        let mut row = vec![R::zero(); width];
        for (k, c) in q.iter().enumerate() {
            row[width - 1 - (k + shift)] = c.clone();
        }
        full.push(row);
    }
    let size = rows_p + rows_q;
    if j == 0 {
        return full;
    }
    let last_col = width - 1 - i;
    full.into_iter()
        .map(|row| {
            let mut r: Vec<R> = row[..size - 1].to_vec();
            r.push(row[last_col].clone());
            r
        })
        .collect()
}

/// Coefficients (ascending) of the `j`-th subresultant of `p` and `q`, both
/// given with nonzero leading coefficients.
pub fn subresultant_coeffs<R: Ring>(p: &[R], q: &[R], j: usize) -> Vec<R> {
    let (p, q) = (trim(p), trim(q));
    let m = p.len() - 1;
    let n = q.len() - 1;
    assert!(j < m.min(n), "subresultant index out of range");
    (0..=j)
        .map(|i| bareiss_determinant(subresultant_matrix(p, q, j, i)))
        .collect()
}

/// Resultant of two coefficient lists (ascending) with nonzero leading terms.
pub fn resultant_coeffs<R: Ring>(p: &[R], q: &[R]) -> R {
    let (p, q) = (trim(p), trim(q));
    if p.is_empty() || q.is_empty() {
        return R::zero();
    }
    let m = p.len() - 1;
    let n = q.len() - 1;
    if m == 0 {
        return p[0].pow(n as u32);
    }
    if n == 0 {
        return q[0].pow(m as u32);
    }
    if m + n <= BAREISS_LIMIT {
        bareiss_determinant(sylvester_matrix(p, q))
    } else {
        resultant_prs(p, q)
    }
}

fn pseudo_rem<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<R> = a.to_vec();
    let delta = a.len() - 1 - db;
    let mut steps = 0u32;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.times(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].minus(&lr.times(bc));
        }
        steps += 1;
        let t = trim(&r).len();
        r.truncate(t);
    }
    let extra = (delta as u32 + 1).saturating_sub(steps);
    if extra > 0 {
        let f = lb.pow(extra);
        for c in r.iter_mut() {
            *c = c.times(&f);
        }
    }
    r
}

/// Resultant through the subresultant remainder sequence.
pub fn resultant_prs<R: Ring>(p: &[R], q: &[R]) -> R {
    let (mut a, mut b) = (trim(p).to_vec(), trim(q).to_vec());
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let mut s = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = !s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return finish(s, b[0].pow((a.len() - 1) as u32));
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = !s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            return R::zero();
        }
        let div = g.times(&h.pow(delta));
        b = r.iter().map(|c| c.div_exact(&div)).collect();
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = g.pow(delta).div_exact(&h.pow(delta - 1));
        }
        if b.len() == 1 {
            let da = (a.len() - 1) as u32;
            let lb = b[0].clone();
            let res = if da == 0 {
                R::one()
            } else {
                lb.pow(da).div_exact(&h.pow(da - 1))
            };
            return finish(s, res);
        }
    }
}

fn finish<R: Ring>(negate: bool, r: R) -> R {
    if negate {
        r.negated()
    } else {
        r
    }
}

fn check_nonzero(p: &BiPoly, q: &BiPoly) -> Result<(), PolyError> {
    if p.is_zero() || q.is_zero() {
        Err(PolyError::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..n).rev() {
        p = &(&p * &UniPoly::new(vec![-xs[i].clone(), <Rational as Ring>::one()])) + &UniPoly::constant(c[i].clone());
    }
    p
}

/// Specializes the surviving variable at `bound + 1` integers where neither
/// leading coefficient vanishes, applies `f` to the univariate coefficient
/// lists, and interpolates each output component.
fn specialize_and_interpolate(
    pc: &[UniPoly],
    qc: &[UniPoly],
    bound: usize,
    outputs: usize,
    f: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> Vec<UniPoly> {
    let (lp, lq) = (pc.last().unwrap(), qc.last().unwrap());
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys: Vec<Vec<Rational>> = vec![Vec::with_capacity(bound + 1); outputs];
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let x = int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        k += 1;
        if Ring::is_zero(&lp.eval(&x)) || Ring::is_zero(&lq.eval(&x)) {
            continue;
        }
        let pv: Vec<Rational> = pc.iter().map(|c| c.eval(&x)).collect();
        let qv: Vec<Rational> = qc.iter().map(|c| c.eval(&x)).collect();
        for (y, v) in ys.iter_mut().zip(f(&pv, &qv)) {
            y.push(v);
        }
        xs.push(x);
    }
    ys.iter().map(|y| interpolate(&xs, y)).collect()
}

fn max_degree(c: &[UniPoly]) -> usize {
    c.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
}

fn surviving(p: &BiPoly, var: Var) -> char {
    match var {
        Var::X => p.vars()[1],
        Var::Y => p.vars()[0],
    }
}

/// Resultant of `p` and `q` with respect to `var`, a polynomial in the
/// surviving variable.
pub fn resultant(p: &BiPoly, q: &BiPoly, var: Var) -> Result<UniPoly, PolyError> {
    check_nonzero(p, q)?;
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let name = surviving(p, var);
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    if m == 0 || n == 0 {
        return Ok(resultant_coeffs(&pc, &qc).with_var(name));
    }
    let bound = n * max_degree(&pc) + m * max_degree(&qc);
    let r = specialize_and_interpolate(&pc, &qc, bound, 1, |a, b| vec![resultant_coeffs(a, b)]);
    Ok(r.into_iter().next().unwrap().with_var(name))
}

/// Coefficients `(s1, s0)` of the first subresultant `s1 * v + s0` of `p`
/// and `q` with respect to `var`. At a simple common root the eliminated
/// variable equals `-s0 / s1`.
pub fn first_subresultant(
    p: &BiPoly,
    q: &BiPoly,
    var: Var,
) -> Result<(UniPoly, UniPoly), PolyError> {
    check_nonzero(p, q)?;
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    if pc.len() < 3 || qc.len() < 3 {
        return Err(PolyError::ConstantPolynomial);
    }
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    let bound = (n - 1) * max_degree(&pc) + (m - 1) * max_degree(&qc);
    let name = surviving(p, var);
    let s = specialize_and_interpolate(&pc, &qc, bound, 2, |a, b| subresultant_coeffs(a, b, 1));
    Ok((s[1].clone().with_var(name), s[0].clone().with_var(name)))
}

pub fn resultant_univariate(p: &UniPoly, q: &UniPoly) -> Rational {
    resultant_coeffs(p.coeffs(), q.coeffs())
}

/// `(-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<Rational, PolyError> {
    let n = match p.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => return Err(PolyError::ConstantPolynomial),
        Some(n) => n,
    };
    let r = resultant_univariate(p, &p.derivative()) / p.lc().unwrap();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, parse_poly};

    #[test]
    fn linear_factor_resultant() {
        let p = parse_poly("y^2 + x^2 - 1").unwrap();
        let q = parse_poly("y - x").unwrap();
        let r = resultant(&p, &q, Var::Y).unwrap();
        assert_eq!(r, UniPoly::from_i64(&[-1, 0, 2]));
    }

    #[test]
    fn shared_root_resultant_vanishes() {
        let p = parse_poly("y^2").unwrap();
        let q = parse_poly("y").unwrap();
        assert!(resultant(&p, &q, Var::Y).unwrap().is_zero());
    }

    #[test]
    fn zero_input_is_an_error() {
        let p = parse_poly("0").unwrap();
        let q = parse_poly("y").unwrap();
        assert_eq!(resultant(&p, &q, Var::Y), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn discriminants_of_quadratics() {
        assert_eq!(discriminant(&UniPoly::from_i64(&[-2, 0, 1])).unwrap(), int(8));
        assert_eq!(discriminant(&UniPoly::from_i64(&[1, -2, 1])).unwrap(), int(0));
        assert_eq!(discriminant(&UniPoly::from_i64(&[1, 0, 1])).unwrap(), int(-4));
        assert_eq!(
            discriminant(&UniPoly::from_i64(&[3])),
            Err(PolyError::ConstantPolynomial)
        );
    }

    #[test]
    fn cubic_discriminant() {
        // x^3 - 3x: -4p^3 - 27q^2 with p = -3, q = 0 gives 108.
        assert_eq!(discriminant(&UniPoly::from_i64(&[0, -3, 0, 1])).unwrap(), int(108));
    }

    #[test]
    fn prs_matches_bareiss_on_fixed_input() {
        let p: Vec<Rational> = [3, -1, 4, 1, -5, 9, 2].iter().map(|&c| int(c)).collect();
        let q: Vec<Rational> = [2, 7, -1, 8, 2].iter().map(|&c| int(c)).collect();
        let a = bareiss_determinant(sylvester_matrix(&p, &q));
        assert_eq!(resultant_prs(&p, &q), a);
        assert_eq!(resultant_prs(&q, &p), a); // (-1)^{6*4} = 1
    }

    #[test]
    fn first_subresultant_recovers_common_root() {
        // Common root y = 2 at every x: (y - 2)(y + x), (y - 2)(y - 1).
        let p = parse_poly("(y - 2)*(y + x)").unwrap();
        let q = parse_poly("(y - 2)*(y - 1) + x - 1").unwrap();
        let (s1, s0) = first_subresultant(&p, &q, Var::Y).unwrap();
        // At x = 1 the first polynomial pair shares only y = 2 (roots -1 vs 1).
        let x = int(1);
        let y = -s0.eval(&x) / s1.eval(&x);
        assert_eq!(y, int(2));
    }

    #[test]
    fn interpolation_matches_polynomial_ring_elimination() {
        let p = parse_poly("x*y^3 - 3*y^2 + x^2*y - x^3 + 2").unwrap();
        let q = parse_poly("(x - 1)*y^4 + y^2 - 5*x*y + x^4 - 7").unwrap();
        let (pc, qc) = (p.coefficients_in(Var::Y), q.coefficients_in(Var::Y));
        let direct = resultant_coeffs(&pc, &qc);
        assert_eq!(resultant(&p, &q, Var::Y).unwrap(), direct);
        let sub = subresultant_coeffs(&pc, &qc, 1);
        let (s1, s0) = first_subresultant(&p, &q, Var::Y).unwrap();
        assert_eq!((s1, s0), (sub[1].clone(), sub[0].clone()));
    }
}
