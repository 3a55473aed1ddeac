use num_complex::Complex64;

use super::{rational_to_f64, BiPoly, Var};

/// Float copy of a bivariate polynomial for fast repeated evaluation. Terms
/// are grouped by the power of `y`, each group dense in `x`.
#[derive(Clone, Debug)]
pub struct FloatBiPoly {
    rows: Vec<Vec<f64>>,
}

impl FloatBiPoly {
    pub fn new(p: &BiPoly) -> Self {
        let dy = p.degree_in(Var::Y).map_or(0, |d| d as usize + 1);
        let dx = p.degree_in(Var::X).map_or(0, |d| d as usize + 1);
        let mut rows = vec![vec![0.0; dx]; dy];
        for (&(i, j), c) in p.terms() {
            rows[j as usize][i as usize] = rational_to_f64(c);
        }
        FloatBiPoly { rows }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.rows.iter().rev().fold(0.0, |acc, row| {
            acc * y + row.iter().rev().fold(0.0, |a, &c| a * x + c)
        })
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        self.rows.iter().rev().fold(zero, |acc, row| {
            acc * y + row.iter().rev().fold(zero, |a, &c| a * x + c)
        })
    }

    /// Coefficients of the powers of `y` at a fixed `x`.
    pub fn restrict_x(&self, x: Complex64) -> Vec<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        self.rows
            .iter()
            .map(|row| row.iter().rev().fold(zero, |a, &c| a * x + c))
            .collect()
    }

    /// Value and gradient.
    pub fn eval_grad(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (mut v, mut vx, mut vy) = (0.0, 0.0, 0.0);
        for row in self.rows.iter().rev() {
            let (mut r, mut rx) = (0.0, 0.0);
            for &c in row.iter().rev() {
                rx = rx * x + r;
                r = r * x + c;
            }
            vy = vy * y + v;
            v = v * y + r;
            vx = vx * y + rx;
        }
        (v, vx, vy)
    }

    pub fn eval_grad_complex(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut v, mut vx, mut vy) = (zero, zero, zero);
        for row in self.rows.iter().rev() {
            let (mut r, mut rx) = (zero, zero);
            for &c in row.iter().rev() {
                rx = rx * x + r;
                r = r * x + c;
            }
            vy = vy * y + v;
            v = v * y + r;
            vx = vx * y + rx;
        }
        (v, vx, vy)
    }

    /// `sum |c| |x|^i |y|^j`: the magnitude against which rounding error in
    /// [`FloatBiPoly::eval`] is measured.
    pub fn eval_abs(&self, x: f64, y: f64) -> f64 {
        let (x, y) = (x.abs(), y.abs());
        self.rows.iter().rev().fold(0.0, |acc, row| {
            acc * y + row.iter().rev().fold(0.0, |a, &c| a * x + c.abs())
        })
    }

    /// `sum |c| r^(i+j)`, a bound on `|p|` over the disk of radius `r`.
    pub fn magnitude_at_radius(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for (j, row) in self.rows.iter().enumerate() {
            for (i, &c) in row.iter().enumerate() {
                acc += c.abs() * r.powi((i + j) as i32);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn matches_exact_evaluation() {
        let p = parse_poly("3 - 2*x + x^2*y - 5*y^3 + x^4").unwrap();
        let fp = FloatBiPoly::new(&p);
        let (x, y) = (0.7, -1.3);
        assert!((fp.eval(x, y) - p.eval_f64(x, y)).abs() < 1e-12);
        let (v, gx, gy) = fp.eval_grad(x, y);
        assert!((v - p.eval_f64(x, y)).abs() < 1e-12);
        assert!((gx - p.derivative(Var::X).eval_f64(x, y)).abs() < 1e-12);
        assert!((gy - p.derivative(Var::Y).eval_f64(x, y)).abs() < 1e-12);
        let z = Complex64::new(0.3, 0.4);
        let w = Complex64::new(-0.2, 1.1);
        let (cv, cx, _) = fp.eval_grad_complex(z, w);
        assert!((cv - p.eval_complex(z, w)).norm() < 1e-12);
        assert!((cx - p.derivative(Var::X).eval_complex(z, w)).norm() < 1e-12);
    }
}
