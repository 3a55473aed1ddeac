//! The ten reference quartics, one per combination of oval count, type and
//! extreme value of the totally real count, with their expected invariants.

use serde::Serialize;
use thetahull_core::exactpoly::{parse_poly, BiPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub s: u32,
    pub a: u8,
    pub t: usize,
    pub e: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TableRow {
    /// 1-based row number.
    pub row: usize,
    pub polynomial: &'static str,
    pub expected: Expected,
}

const fn row(row: usize, s: u32, a: u8, t: usize, e: usize, polynomial: &'static str) -> TableRow {
    TableRow {
        row,
        polynomial,
        expected: Expected { s, a, t, e },
    }
}

pub const TABLE: [TableRow; 10] = [
    row(1, 1, 1, 0, 0, "1 - x^4 - y^4"),
    row(2, 1, 1, 4, 4, "1 + 12*x^2 - 10*x^4 + 12*y^2 - 101*x^2*y^2 - 10*y^4"),
    row(3, 2, 1, 4, 2, "9 - 10*x^2 + 2*x^4 + 6*y^2 + 2*x^2*y^2 + 2*y^4"),
    row(4, 2, 1, 8, 4, "15 - 92*x^2 + 80*x^4 + 8*x*y - 92*y^2 + 416*x^2*y^2 + 80*y^4"),
    row(5, 2, 0, 0, 0, "201 - 300*x^2 + 101*x^4 - 300*y^2 + 200*x^2*y^2 + 101*y^4"),
    row(6, 2, 0, 4, 4, "3 - 24*x^2 + 19*x^4 - 24*y^2 + 104*x^2*y^2 + 19*y^4"),
    row(
        7,
        3,
        1,
        12,
        3,
        "39 - 155*x^2 + 200*x^4 + 10*x*y - 20*x^2*y - 155*y^2 - 40*x*y^2 + 260*x^2*y^2 - 20*y^3 + 40*x*y^3 + 220*y^4",
    ),
    row(8, 3, 1, 16, 4, "101 + 2*x - 600*x^2 + 500*x^4 + 2*y - 600*y^2 + 2600*x^2*y^2 + 500*y^4"),
    row(9, 4, 0, 24, 3, "-1 + 80*x^2 + 80*x^4 + 240*x^2*y + 20*y^2 - 40*y^3 + 20*y^4"),
    row(10, 4, 0, 28, 4, "101 - 600*x^2 + 501*x^4 - 600*y^2 + 2600*x^2*y^2 + 501*y^4"),
];

pub fn table_row(k: usize) -> Option<&'static TableRow> {
    TABLE.get(k.checked_sub(1)?)
}

impl TableRow {
    pub fn poly(&self) -> BiPoly {
        parse_poly(self.polynomial).expect("corpus polynomials parse")
    }

    /// The polynomial with its constant term negated; used to check that
    /// the verification harness reports a mismatch.
    pub fn perturbed(&self) -> BiPoly {
        let f = self.poly();
        let c = f.coeff(0, 0);
        BiPoly::from_terms(
            f.terms()
                .map(|(&k, v)| (k, v.clone()))
                .filter(|&(k, _)| k != (0, 0))
                .chain([((0, 0), -c)])
                .filter(|(_, v): &(_, Rational)| *v != Rational::from_integer(0.into())),
        )
    }
}
