use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest `f64`; saturates to ±inf for values out of range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}
