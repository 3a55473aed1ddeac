use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modgcd::gcd_integer;
use super::rational::{int, rational_to_f64};
use super::Rational;

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. The highest stored coefficient is never zero; the zero polynomial
/// has no coefficients.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: char,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var: 'x' }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new(), var: 'x' }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The linear polynomial `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the value at `x`, evaluated over the integers.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            let ci = c.numer() * (&lcm / c.denom());
            acc = acc * n + ci * &dpow;
            dpow *= d;
        }
        acc.cmp(&BigInt::zero())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + rational_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Self::new(coeffs).with_var(self.var)
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect()).with_var(self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::constant(Rational::one()).with_var(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.lc().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero().with_var(self.var), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (
            UniPoly::new(quot).with_var(self.var),
            UniPoly::new(rem).with_var(self.var),
        )
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scalar_mul(&inv)
            }
        }
    }

    /// Monic greatest common divisor, computed modulo a sequence of primes;
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            let nz = if self.is_zero() { other } else { self };
            return nz.monic().with_var(self.var);
        }
        if self.is_constant() || other.is_constant() {
            return UniPoly::constant(Rational::one()).with_var(self.var);
        }
        let g = gcd_integer(&self.primitive_integer(), &other.primitive_integer());
        UniPoly::new(g.into_iter().map(Rational::from_integer).collect())
            .monic()
            .with_var(self.var)
    }

    /// `(g, s, t)` with `s * self + t * other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let var = self.var;
        let one = UniPoly::constant(Rational::one()).with_var(var);
        let zero = UniPoly::zero().with_var(var);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scalar_mul(&inv), s0.scalar_mul(&inv), t0.scalar_mul(&inv))
            }
        }
    }

    /// Inverse modulo `m`, if `self` and `m` are coprime.
    pub fn inverse_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.is_constant() && !g.is_zero() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Bound `1 + max |a_i / a_n|` on the modulus of every complex root.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = match self.lc() {
            Some(lc) => lc.abs(),
            None => return Rational::one(),
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Integer coefficients of the primitive part, leading coefficient positive.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// A positive rational multiple of `self mod m`, computed by integer
    /// pseudo-division. Signs of values are those of the true remainder.
    pub fn positive_rem(&self, m: &UniPoly) -> UniPoly {
        let to_int = |p: &UniPoly| -> Vec<BigInt> {
            let lcm = p
                .coeffs
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            p.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        };
        if self.is_zero() {
            return self.clone();
        }
        let b = to_int(m);
        let lc = b.last().unwrap().clone();
        let (scale, flip) = (lc.abs(), lc.is_negative());
        let mut r = to_int(self);
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
            let g = r.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !g.is_zero() && !g.is_one() {
                for c in r.iter_mut() {
                    *c /= &g;
                }
            }
        }
        UniPoly::new(r.into_iter().map(Rational::from_integer).collect()).with_var(self.var)
    }

    /// Approximate `log2` of the largest coefficient magnitude.
    pub fn log2_max(&self) -> i64 {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.numer().bits() as i64 - c.denom().bits() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Float coefficients of `p / 2^shift`.
    pub fn to_f64_shifted(&self, shift: i64) -> Vec<f64> {
        let scale = if shift >= 0 {
            Rational::from_integer(BigInt::one() << shift as usize).recip()
        } else {
            Rational::from_integer(BigInt::one() << (-shift) as usize)
        };
        self.coeffs
            .iter()
            .map(|c| rational_to_f64(&(c * &scale)))
            .collect()
    }

    /// Float coefficients after dividing by a power of two so that the largest
    /// coefficient has magnitude near one. Root locations are unchanged.
    pub fn to_f64_scaled(&self) -> Vec<f64> {
        if self.is_zero() {
            return Vec::new();
        }
        self.to_f64_shifted(self.log2_max())
    }

    /// `p(c * x)`.
    pub fn scale_var(&self, c: &Rational) -> UniPoly {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        UniPoly::new(out).with_var(self.var)
    }

}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(add_coeffs(&self.coeffs, &rhs.coeffs)).with_var(self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect()).with_var(self.var)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero().with_var(self.var);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out).with_var(self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn trims_and_degree() {
        let p = UniPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn derivative_of_cube() {
        let p = UniPoly::from_i64(&[0, 0, 0, 1]);
        assert_eq!(p.derivative(), UniPoly::from_i64(&[0, 0, 3]));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = UniPoly::from_i64(&[-2, 1, 1]);
        let b = UniPoly::from_i64(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&[-1, 1]));
        let (q, r) = a.div_rem(&UniPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn squarefree_part() {
        let p = UniPoly::from_i64(&[1, -2, 1]).pow(2); // (x-1)^4
        assert_eq!(p.squarefree(), UniPoly::from_i64(&[-1, 1]));
        assert!(!p.is_squarefree());
    }

    #[test]
    fn positive_remainder_keeps_sign() {
        let p = UniPoly::from_i64(&[2, 0, 0, 1]);
        let m = UniPoly::from_i64(&[3, 0, -2]);
        let r = p.positive_rem(&m);
        let exact = p.rem(&m);
        assert_eq!(r.degree(), Some(1));
        let ratio = r.coeff(1) / exact.coeff(1);
        assert!(ratio > Rational::zero());
        assert_eq!(r.coeff(0), exact.coeff(0) * ratio);
    }

    #[test]
    fn primitive_integer_form() {
        let p = UniPoly::new(vec![rat(1, 2), rat(-3, 4)]);
        let ints: Vec<i64> = p
            .primitive_integer()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![-2, 3]);
    }

    #[test]
    fn scaled_floats_survive_huge_coefficients() {
        let big = Rational::from_integer(BigInt::from(10).pow(400));
        let p = UniPoly::new(vec![-big.clone(), big]);
        let c = p.to_f64_scaled();
        assert!((c[0] + c[1]).abs() < 1e-12 && c[1].is_finite() && c[1] > 0.1);
    }
}
