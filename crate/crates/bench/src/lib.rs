//! Shared inputs for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetahull_core::exactpoly::{parse_poly, BiPoly};
use thetahull_core::sepbodies::{random_separated, Body};

/// An M-quartic with 28 real bitangents.
pub const M_QUARTIC: &str = "101 - 600*x^2 + 501*x^4 - 600*y^2 + 2600*x^2*y^2 + 501*y^4";

/// A two-oval quartic with four totally real bitangents.
pub const TWO_OVALS: &str = "3 - 24*x^2 + 19*x^4 - 24*y^2 + 104*x^2*y^2 + 19*y^4";

pub fn quartic(text: &str) -> BiPoly {
    parse_poly(text).expect("benchmark polynomial parses")
}

/// Seeded strongly separated instance in dimension `n`.
pub fn bodies(n: usize, points: usize) -> Vec<Body> {
    random_separated(n, points, &mut ChaCha8Rng::seed_from_u64(n as u64))
}
