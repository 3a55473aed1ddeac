//! Infix polynomial parser.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'x' | 'y' | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and multiplication must be written out.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{BiPoly, Rational, MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    NonIntegerExponent,
    DivisionByNonConstant,
    ZeroDenominator,
    DegreeBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub pos: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at {}: {}", self.pos, msg),
            ParseErrorKind::NonIntegerExponent => {
                write!(f, "exponent at {} is not a non-negative integer", self.pos)
            }
            ParseErrorKind::DivisionByNonConstant => {
                write!(f, "division by a non-constant at {}", self.pos)
            }
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator at {}", self.pos),
            ParseErrorKind::DegreeBound => {
                write!(f, "degree at {} exceeds the bound {}", self.pos, MAX_DEGREE)
            }
        }
    }
}

pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

impl std::str::FromStr for BiPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            pos: self.pos,
        }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.to_string()))
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let start = self.pos;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f).map_err(|_| ParseError {
                        kind: ParseErrorKind::DegreeBound,
                        pos: start,
                    })?;
                }
                Some(b'/') => {
                    return Err(self.syntax("'/' is only allowed between integer literals"))
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    return Err(self.syntax("implicit multiplication is not allowed"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() || self.src.get(self.pos) == Some(&b'.') {
                self.pos = start;
                return Err(self.err(ParseErrorKind::NonIntegerExponent));
            }
            let e: u32 = match std::str::from_utf8(digits).unwrap().parse() {
                Ok(e) if e <= MAX_DEGREE => e,
                _ => {
                    self.pos = start;
                    return Err(self.err(ParseErrorKind::DegreeBound));
                }
            };
            return base.try_pow(e).map_err(|_| ParseError {
                kind: ParseErrorKind::DegreeBound,
                pos: start,
            });
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn base(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.rational().map(BiPoly::constant),
            Some(_) => Err(self.syntax("expected a number, 'x', 'y' or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num: BigInt = std::str::from_utf8(self.digits()).unwrap().parse().unwrap();
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(self.syntax("decimal literals are not supported; write a fraction"));
        }
        if self.peek() != Some(b'/') {
            return Ok(Rational::from_integer(num));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let den = self.digits();
        if den.is_empty() {
            return Err(self.err(ParseErrorKind::DivisionByNonConstant));
        }
        let den: BigInt = std::str::from_utf8(den).unwrap().parse().unwrap();
        if den.is_zero() {
            self.pos = start;
            return Err(self.err(ParseErrorKind::ZeroDenominator));
        }
        Ok(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    #[test]
    fn fermat_quartic_terms() {
        let f = parse_poly("1 - x^4 - y^4").unwrap();
        let expect = BiPoly::from_i64_terms(&[((0, 0), 1), ((4, 0), -1), ((0, 4), -1)]);
        assert_eq!(f, expect);
    }

    #[test]
    fn zero_is_empty() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn rational_constant() {
        let f = parse_poly("x*y^2 + 3/2").unwrap();
        assert_eq!(f.term_map().len(), 2);
        assert_eq!(f.coeff(1, 2), int(1));
        assert_eq!(f.coeff(0, 0), rat(3, 2));
    }

    #[test]
    fn leading_minus_and_parentheses() {
        let f = parse_poly("-(x + 1)^2 + 2*x").unwrap();
        assert_eq!(f, parse_poly("-1 - x^2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("1 + x^1.5").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);
        assert_eq!(e.pos, 6);

        let e = parse_poly("1/x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DivisionByNonConstant);

        let e = parse_poly("2x").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.pos, 1);

        let e = parse_poly("x^y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);

        let e = parse_poly("x/2").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        let e = parse_poly("(x + 1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));

        assert_eq!(
            parse_poly("3/0").unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert_eq!(
            parse_poly("x^65").unwrap_err().kind,
            ParseErrorKind::DegreeBound
        );
    }
}
