use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, UniPoly};

/// Commutative ring with exact division, the coefficient domain of the
/// fraction-free elimination routines.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Division known to be exact. Panics in debug builds otherwise.
    fn div_exact(&self, other: &Self) -> Self;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}
