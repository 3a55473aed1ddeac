use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactpoly::{int, Rational, UniPoly};

/// Closed interval `[lo, hi]` containing exactly one real root of its
/// polynomial. When `exact` is set, `lo == hi` is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub exact: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Integer coefficients with the same sign pattern as `p` at every point.
fn sign_preserving_integers(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// A positive multiple of `-(a mod b)`, primitive, empty when zero.
fn negated_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lc = b.last().unwrap();
    let (scale, flip) = (lc.abs(), lc.is_negative());
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let top = if flip { -top } else { top };
        let off = r.len() + 1 - b.len();
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for (i, bi) in b[..b.len() - 1].iter().enumerate() {
            r[off + i] -= &top * bi;
        }
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    let g = r.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    r.into_iter().map(|c| -(c / &g)).collect()
}

/// Sign of `sum a_k (n/d)^k` for `d > 0`, via `sum a_k n^k d^(m-k)`.
fn sign_at_integer(coeffs: &[BigInt], x: &Rational) -> Ordering {
    let n = x.numer();
    let d = x.denom();
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    base: UniPoly,
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let base = p.squarefree();
        let mut chain = vec![sign_preserving_integers(&base)];
        if !base.is_constant() {
            chain.push(sign_preserving_integers(&base.derivative()));
            loop {
                let n = chain.len();
                let r = negated_remainder(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                chain.push(r);
            }
        }
        SturmChain { chain, base }
    }

    /// Squarefree polynomial the chain was built from.
    pub fn base(&self) -> &UniPoly {
        &self.base
    }

    pub fn sign_of_base_at(&self, x: &Rational) -> Ordering {
        sign_at_integer(&self.chain[0], x)
    }

    fn count_changes<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_changes(self.chain.iter().map(|c| sign_at_integer(c, x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_changes(self.chain.iter().map(|c| {
            let lc = c.last().unwrap().sign_ordering();
            let odd = (c.len() - 1) % 2 == 1;
            if !positive && odd {
                lc.reverse()
            } else {
                lc
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &UniPoly) -> usize {
    SturmChain::new(p).count_all()
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn count_real_roots_in(p: &UniPoly, lo: &Rational, hi: &Rational) -> usize {
    assert!(lo < hi, "empty root-counting interval");
    SturmChain::new(p).count_in(lo, hi)
}

/// Disjoint isolating intervals, sorted, one per distinct real root.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<IsolatingInterval> {
    let chain = SturmChain::new(p);
    isolate_with_chain(&chain)
}

pub(crate) fn isolate_with_chain(chain: &SturmChain) -> Vec<IsolatingInterval> {
    let q = chain.base();
    if q.is_constant() {
        return Vec::new();
    }
    let b = q.cauchy_bound();
    let mut out = Vec::new();
    let lo = -b.clone();
    let n = chain.count_in(&lo, &b);
    let mut stack = vec![(lo, b, n)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo,
                hi,
                exact: false,
            }),
            _ => {
                let mid = (&lo + &hi) / int(2);
                if chain.sign_of_base_at(&mid) == Ordering::Equal {
                    let mut delta = (&hi - &lo) / int(4);
                    let (l, r) = loop {
                        let l = &mid - &delta;
                        let r = &mid + &delta;
                        if chain.sign_of_base_at(&l) != Ordering::Equal
                            && chain.sign_of_base_at(&r) != Ordering::Equal
                            && chain.count_in(&l, &r) == 1
                        {
                            break (l, r);
                        }
                        delta /= int(2);
                    };
                    let nl = chain.count_in(&lo, &l);
                    let nr = chain.count_in(&r, &hi);
                    out.push(IsolatingInterval {
                        lo: mid.clone(),
                        hi: mid,
                        exact: true,
                    });
                    stack.push((lo, l, nl));
                    stack.push((r, hi, nr));
                } else {
                    let nl = chain.count_in(&lo, &mid);
                    stack.push((mid.clone(), hi, n - nl));
                    stack.push((lo, mid, nl));
                }
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    // Neighbouring intervals from one bisection share an endpoint that is not
    // a root; pull the right one away from it.
    for i in 1..out.len() {
        if out[i - 1].hi < out[i].lo || out[i].exact {
            continue;
        }
        let edge = out[i].lo.clone();
        loop {
            let mid = (&out[i].lo + &out[i].hi) / int(2);
            if chain.count_in(&mid, &out[i].hi) == 1 {
                out[i].lo = mid;
                break;
            }
            out[i].hi = mid;
        }
        debug_assert!(out[i].lo > edge);
    }
    out
}

/// Simplest fraction (smallest denominator) in the closed interval.
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if hi.is_negative() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    if !lo.is_positive() {
        return Rational::zero();
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_rational_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Shrinks an isolating interval of `p` to width at most `tol`. Rational roots
/// are detected along the way and returned as exact intervals.
pub fn refine(p: &UniPoly, iv: &IsolatingInterval, tol: &Rational) -> IsolatingInterval {
    refine_with_base(&p.squarefree(), iv, tol)
}

pub(crate) fn refine_with_base(
    q: &UniPoly,
    iv: &IsolatingInterval,
    tol: &Rational,
) -> IsolatingInterval {
    if iv.exact {
        return iv.clone();
    }
    let exact = |r: Rational| IsolatingInterval {
        lo: r.clone(),
        hi: r,
        exact: true,
    };
    if q.degree() == Some(1) {
        return exact(-q.coeff(0) / q.coeff(1));
    }
    let ints = sign_preserving_integers(q);
    let sign = |x: &Rational| sign_at_integer(&ints, x);
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    for end in [&lo, &hi] {
        if sign(end) == Ordering::Equal {
            return exact(end.clone());
        }
    }
    let s_lo = sign(&lo);
    loop {
        let cand = simplest_rational_between(&lo, &hi);
        if sign(&cand) == Ordering::Equal {
            return exact(cand);
        }
        if &hi - &lo <= *tol {
            break;
        }
        let mid = (&lo + &hi) / int(2);
        match sign(&mid) {
            Ordering::Equal => return exact(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    IsolatingInterval {
        lo,
        hi,
        exact: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn to_f(r: &Rational) -> f64 {
        crate::exactpoly::rational_to_f64(r)
    }

    #[test]
    fn odd_cubic_has_three_roots() {
        let p = UniPoly::from_i64(&[0, -3, 0, 1]);
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 3);
        let s3 = 3f64.sqrt();
        for (iv, root) in ivs.iter().zip([-s3, 0.0, s3]) {
            assert!(to_f(&iv.lo) <= root && root <= to_f(&iv.hi));
        }
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&UniPoly::from_i64(&[1, 0, 1])).is_empty());
        assert_eq!(count_real_roots(&UniPoly::from_i64(&[1, 0, 1])), 0);
    }

    #[test]
    fn refine_sqrt_two() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let iv = IsolatingInterval {
            lo: int(1),
            hi: int(2),
            exact: false,
        };
        let r = refine(&p, &iv, &rat(1, 1_000_000));
        assert!(r.width() <= rat(1, 1_000_000));
        let s2 = 2f64.sqrt();
        assert!(to_f(&r.lo) <= s2 && s2 <= to_f(&r.hi));
    }

    #[test]
    fn refine_detects_rational_root() {
        let p = UniPoly::new(vec![rat(-1, 3), int(1)]);
        let iv = IsolatingInterval {
            lo: int(0),
            hi: int(1),
            exact: false,
        };
        let r = refine(&p, &iv, &rat(1, 10));
        assert!(r.exact);
        assert_eq!(r.lo, rat(1, 3));

        // Same, hidden inside a product with an irrational factor.
        let q = &p * &UniPoly::from_i64(&[-2, 0, 1]);
        let r = refine(&q, &iv, &rat(1, 1 << 30));
        assert!(r.exact && r.lo == rat(1, 3));
    }

    #[test]
    fn refine_around_zero() {
        let p = UniPoly::from_i64(&[0, -3, 0, 1]);
        let iv = IsolatingInterval {
            lo: int(-1),
            hi: int(1),
            exact: false,
        };
        let tol = Rational::new(1.into(), BigInt::from(10).pow(12));
        let r = refine(&p, &iv, &tol);
        assert!(r.exact && r.lo.is_zero() || (r.lo >= -tol.clone() && r.hi <= tol));
    }

    #[test]
    fn counts_in_intervals() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(count_real_roots_in(&p, &int(0), &int(10)), 1);
        // Fermat quartic on y = 3 and y = 0.
        let f = crate::exactpoly::parse_poly("1 - x^4 - y^4").unwrap();
        assert_eq!(count_real_roots(&f.restrict_y(&int(3))), 0);
        assert_eq!(count_real_roots(&f.restrict_y(&int(0))), 2);
    }

    #[test]
    fn half_open_semantics() {
        // Roots at 1 and 2: (1, 2] holds only 2.
        let p = UniPoly::from_i64(&[2, -3, 1]);
        assert_eq!(count_real_roots_in(&p, &int(1), &int(2)), 1);
        assert_eq!(count_real_roots_in(&p, &int(0), &int(1)), 1);
    }

    #[test]
    fn exact_roots_found_at_bisection_points() {
        // Roots 0 and +-1 are dyadic; isolation must still separate them.
        let p = UniPoly::from_i64(&[0, -1, 0, 1]);
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 3);
        for w in ivs.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn repeated_roots_counted_once() {
        let p = UniPoly::from_i64(&[-1, 1]).pow(3);
        assert_eq!(count_real_roots(&p), 1);
    }

    #[test]
    fn simplest_fractions() {
        assert_eq!(simplest_rational_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_rational_between(&rat(-7, 2), &rat(-3, 1)), int(-3));
        assert_eq!(simplest_rational_between(&rat(-1, 2), &rat(1, 2)), int(0));
    }
}
