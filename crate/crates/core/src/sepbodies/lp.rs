//! Phase-one simplex with Bland's rule, over `f64` or exact rationals.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::exactpoly::Rational;

pub trait Scalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Sign, with values within the type's tolerance treated as zero.
    fn sign(&self) -> Ordering;
    fn cmp_value(&self, o: &Self) -> Ordering;
}

const FLOAT_EPS: f64 = 1e-12;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> Ordering {
        if *self > FLOAT_EPS {
            Ordering::Greater
        } else if *self < -FLOAT_EPS {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn cmp_value(&self, o: &Self) -> Ordering {
        self.total_cmp(o)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn cmp_value(&self, o: &Self) -> Ordering {
        self.cmp(o)
    }
}

/// Outcome of minimizing the artificial mass for `A x = b, x >= 0`.
pub struct PhaseOne<T> {
    pub feasible: bool,
    /// Primal point (structural variables only).
    pub x: Vec<T>,
    /// Optimal duals `y`: `y^T A <= 0` columnwise and `y^T b` equals the
    /// artificial mass, so `y^T b > 0` certifies infeasibility.
    pub y: Vec<T>,
}

/// `A` is given by rows; `b >= 0` is required.
pub fn phase_one<T: Scalar>(a: &[Vec<T>], b: &[T]) -> PhaseOne<T> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m;
    // Tableau rows, rhs in the last column.
    let mut t: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<T> = (0..=width)
        .map(|j| {
            let base = if (n..width).contains(&j) { T::one() } else { T::zero() };
            t.iter().fold(base, |acc, row| acc.sub(&row[j]))
        })
        .collect();
    for k in n..width {
        cost[k] = T::zero();
    }
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].sign() == Ordering::Less) else { break };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if t[i][enter].sign() != Ordering::Greater {
                continue;
            }
            let ratio = t[i][width].div(&t[i][enter]);
            let better = match &leave {
                None => true,
                Some((l, r)) => match ratio.cmp_value(r) {
                    Ordering::Less => true,
                    Ordering::Equal => basis[i] < basis[*l],
                    Ordering::Greater => false,
                },
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v = v.div(&piv);
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].cmp_value(&T::zero()) == Ordering::Equal {
                continue;
            }
            let f = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = v.sub(&f.mul(p));
            }
        }
        let f = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v = v.sub(&f.mul(p));
        }
        basis[r] = enter;
    }
    let mut x = vec![T::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width].clone();
        }
    }
    // Reduced cost of artificial k is 1 - y_k.
    let y: Vec<T> = (0..m).map(|k| T::one().sub(&cost[n + k])).collect();
    let mass = cost[width].clone();
    PhaseOne {
        feasible: mass.sign() == Ordering::Equal,
        x,
        y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    #[test]
    fn feasible_system() {
        // x + y = 1, x - y = 0.
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let r = phase_one(&a, &[int(1), int(0)]);
        assert!(r.feasible);
        assert_eq!(r.x, vec![Rational::new(1.into(), 2.into()); 2]);
    }

    #[test]
    fn infeasible_system_has_farkas_certificate() {
        // x + y = 1 and x + y = 2.
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        let b = [int(1), int(2)];
        let r = phase_one(&a, &b);
        assert!(!r.feasible);
        for j in 0..2 {
            let col: Rational = (0..2).map(|i| &r.y[i] * &a[i][j]).sum();
            assert!(col <= int(0));
        }
        let yb: Rational = (0..2).map(|i| &r.y[i] * &b[i]).sum();
        assert!(yb > int(0));
    }

    #[test]
    fn float_and_exact_agree() {
        let a = vec![vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0]];
        let r = phase_one(&a, &[4.0, 5.0]);
        assert!(r.feasible);
        for (row, b) in a.iter().zip([4.0, 5.0]) {
            let v: f64 = row.iter().zip(&r.x).map(|(p, q)| p * q).sum();
            assert!((v - b).abs() < 1e-12);
        }
    }
}
