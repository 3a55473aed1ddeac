use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{int, rational_to_f64};
use super::{PolyError, Rational, UniPoly};

/// Largest total degree any bivariate polynomial may reach.
pub const MAX_DEGREE: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// Sparse bivariate polynomial: exponent pair `(i, j)` of `x^i y^j` to a
/// nonzero rational coefficient.
#[derive(Clone, Debug)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
    vars: [char; 2],
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

impl Default for BiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
            vars: ['x', 'y'],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Builds from `(i, j, c)` triples, summing repeated exponents and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_i64_terms(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    pub fn with_vars(mut self, vars: [char; 2]) -> Self {
        self.vars = vars;
        self
    }

    pub fn vars(&self) -> [char; 2] {
        self.vars
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(&e, c)| (e, c.clone())),
        )
        .with_vars(self.vars)
    }

    pub fn scalar_mul(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return Self::zero().with_vars(self.vars);
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    pub fn try_mul(&self, rhs: &BiPoly) -> Result<BiPoly, PolyError> {
        let d = self.total_degree().unwrap_or(0) + rhs.total_degree().unwrap_or(0);
        if !self.is_zero() && !rhs.is_zero() && d > MAX_DEGREE {
            return Err(PolyError::DegreeBound(d));
        }
        let mut out = BiPoly::zero().with_vars(self.vars);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, e: u32) -> Result<BiPoly, PolyError> {
        let mut acc = BiPoly::constant(Rational::one()).with_vars(self.vars);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        self.try_pow(e).expect("polynomial degree bound exceeded")
    }

    pub fn derivative(&self, v: Var) -> BiPoly {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c * int(i as i64))),
            Var::Y if j > 0 => Some(((i, j - 1), c * int(j as i64))),
            _ => None,
        }))
        .with_vars(self.vars)
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in y over Horner-in-x coefficients would be faster; degrees
        // here are tiny.
        self.terms.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * pow_r(x, i) * pow_r(y, j)
        })
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().fold(0.0, |acc, (&(i, j), c)| {
            acc + rational_to_f64(c) * x.powi(i as i32) * y.powi(j as i32)
        })
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (&(i, j), c)| {
                acc + x.powu(i) * y.powu(j) * rational_to_f64(c)
            })
    }

    /// Restriction to the line `y = a x + b`, a polynomial in `x`.
    pub fn substitute_line(&self, a: &Rational, b: &Rational) -> UniPoly {
        let line = UniPoly::new(vec![b.clone(), a.clone()]);
        self.substitute_y(&line)
    }

    /// `f(x, c(x))`.
    pub fn substitute_y(&self, c: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&(i, j), coef) in &self.terms {
            let term = &UniPoly::monomial(coef.clone(), i as usize) * &c.pow(j);
            out = &out + &term;
        }
        out.with_var(self.vars[0])
    }

    /// `f(c, y)` as a polynomial in `y`.
    pub fn restrict_x(&self, c: &Rational) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.degree_in(Var::Y).map_or(0, |d| d as usize + 1)];
        for (&(i, j), coef) in &self.terms {
            coeffs[j as usize] += coef * pow_r(c, i);
        }
        UniPoly::new(coeffs).with_var(self.vars[1])
    }

    /// `f(x, c)` as a polynomial in `x`.
    pub fn restrict_y(&self, c: &Rational) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.degree_in(Var::X).map_or(0, |d| d as usize + 1)];
        for (&(i, j), coef) in &self.terms {
            coeffs[i as usize] += coef * pow_r(c, j);
        }
        UniPoly::new(coeffs).with_var(self.vars[0])
    }

    /// Coefficients with respect to `v`, ascending, each a polynomial in the
    /// other variable.
    pub fn coefficients_in(&self, v: Var) -> Vec<UniPoly> {
        let n = self.degree_in(v).map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let (k, other) = if v == Var::X { (i, j) } else { (j, i) };
            let col = &mut cols[k as usize];
            if col.len() <= other as usize {
                col.resize(other as usize + 1, Rational::zero());
            }
            col[other as usize] += c;
        }
        let other_var = if v == Var::X { self.vars[1] } else { self.vars[0] };
        cols.into_iter()
            .map(|c| UniPoly::new(c).with_var(other_var))
            .collect()
    }

    /// Embeds a univariate polynomial as a polynomial in `v` alone.
    pub fn from_uni(p: &UniPoly, v: Var) -> BiPoly {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let e = if v == Var::X { (k as u32, 0) } else { (0, k as u32) };
            (e, c.clone())
        }))
    }

    /// Pulls back along a projective map: with `F` the degree-`d`
    /// homogenisation of `self`, returns `F(M (x, y, 1)^T)`, `d` being the
    /// total degree.
    pub fn projective_pullback(&self, m: &[[Rational; 3]; 3]) -> BiPoly {
        let d = self.total_degree().unwrap_or(0);
        let row = |r: &[Rational; 3]| {
            BiPoly::from_terms([
                ((1, 0), r[0].clone()),
                ((0, 1), r[1].clone()),
                ((0, 0), r[2].clone()),
            ])
        };
        let (lx, ly, lz) = (row(&m[0]), row(&m[1]), row(&m[2]));
        let pows = |p: &BiPoly| -> Vec<BiPoly> {
            let mut v = vec![BiPoly::constant(Rational::one())];
            for k in 1..=d as usize {
                let next = &v[k - 1] * p;
                v.push(next);
            }
            v
        };
        let (px, py, pz) = (pows(&lx), pows(&ly), pows(&lz));
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let k = (d - i - j) as usize;
            let t = &(&px[i as usize] * &py[j as usize]) * &pz[k];
            out = &out + &t.scalar_mul(c);
        }
        out.with_vars(self.vars)
    }

    /// Maximum coefficient magnitude, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

fn pow_r(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
        for (n, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (exp, name) in [(e.0, self.vars[0]), (e.1, self.vars[1])] {
                match exp {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{exp}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scalar_mul(&-Rational::one())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    /// Panics if the product exceeds [`MAX_DEGREE`]; use [`BiPoly::try_mul`]
    /// to handle that case.
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.try_mul(rhs).expect("polynomial degree bound exceeded")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}
