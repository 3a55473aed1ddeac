//! Exact rational polynomial arithmetic.
//!
//! Univariate and bivariate polynomials over `BigRational`, an infix parser,
//! and elimination (resultants, subresultants, discriminants).

mod bipoly;
mod elim;
mod floatpoly;
mod modgcd;
mod parse;
mod rational;
mod ring;
mod unipoly;

pub use bipoly::{BiPoly, Var, MAX_DEGREE};
pub use elim::{
    bareiss_determinant, discriminant, first_subresultant, resultant, resultant_coeffs,
    resultant_prs, resultant_univariate, subresultant_coeffs, sylvester_matrix,
};
pub use floatpoly::FloatBiPoly;
pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use rational::{int, rat, rational_from_f64, rational_to_f64, Rational};
pub use ring::Ring;
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("constant polynomial where positive degree is required")]
    ConstantPolynomial,
    #[error("degree {0} exceeds the bound {MAX_DEGREE}")]
    DegreeBound(u32),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
