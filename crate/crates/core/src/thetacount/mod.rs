//! Counting real theta characteristics of a real curve through its
//! F2 symplectic model, together with the face-count and total-reality bounds
//! for convex hulls of canonical curves. Every closed form has a brute-force
//! counterpart in [`enumerate`].

mod enumerate;
mod topology;

pub use enumerate::{
    brute_force_all_theta, brute_force_odd_with_signs, brute_force_real_theta, hyperelliptic_oracle,
    MAX_BRUTE_FORCE_GENUS,
};
pub use topology::{CurveTopology, HMatrix, ThetaChar};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Largest genus accepted by the closed-form counts.
pub const MAX_GENUS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("genus must be at least 1")]
    GenusZero,
    #[error("genus {0} exceeds the supported maximum {MAX_GENUS}")]
    GenusTooLarge(u32),
    #[error("s must be at least 1 (the real locus is assumed nonempty)")]
    NoComponents,
    #[error("s exceeds g+1 (s = {s}, g = {g})")]
    TooManyComponents { g: u32, s: u32 },
    #[error("a dividing curve needs g+1-s even (g = {g}, s = {s})")]
    DividingParity { g: u32, s: u32 },
    #[error("a curve with s = g+1 components is always dividing")]
    MCurveNotDividing,
    #[error("sign pattern has length {got}, expected s-1 = {expected}")]
    SignLength { expected: usize, got: usize },
    #[error("genus {0} is too large for enumeration (limit {1})")]
    EnumerationTooLarge(u32, u32),
    #[error("face bounds need g >= 3 (got {0})")]
    GenusBelowThree(u32),
    #[error("the oval count k is only meaningful for s = g+1")]
    KNotApplicable,
    #[error("k must satisfy 1 <= k <= g (got k = {k}, g = {g})")]
    KOutOfRange { g: u32, k: u32 },
    #[error("number of real branch points r must satisfy r <= g+1 (got r = {r}, g = {g})")]
    BranchPointsOutOfRange { g: u32, r: u32 },
    #[error("hyperelliptic counts need g >= 2")]
    HyperellipticGenus,
}

/// Odd and even counts of real theta characteristics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityCounts {
    #[serde(serialize_with = "ser_big")]
    pub odd: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub even: BigUint,
}

pub(crate) fn ser_big<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e as usize
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn build_h(t: &CurveTopology) -> HMatrix {
    HMatrix::new(t)
}

/// `odd = 2^{g-1}(2^{s-1} - 1 + a)`, `even = 2^{g-1}(2^{s-1} + 1 - a)`.
pub fn count_real_theta(t: &CurveTopology) -> ParityCounts {
    let base = pow2(t.g - 1);
    let top = pow2(t.s - 1);
    let (odd, even) = if t.dividing {
        (&top - 1u32, &top + 1u32)
    } else {
        (top.clone(), top)
    };
    ParityCounts {
        odd: &base * odd,
        even: &base * even,
    }
}

/// Odd real theta characteristics whose last `s-1` bits of `u` equal `signs`.
pub fn count_odd_with_signs(t: &CurveTopology, signs: &[bool]) -> Result<BigUint, ThetaError> {
    t.check_signs(signs)?;
    if t.dividing && signs.iter().all(|&b| !b) {
        Ok(BigUint::zero())
    } else {
        Ok(pow2(t.g - 1))
    }
}

/// Maximal number of `(g-2)`-faces of the convex hull of a canonical curve.
pub fn face_upper_bound(g: u32) -> Result<BigUint, ThetaError> {
    if g < 3 {
        return Err(ThetaError::GenusBelowThree(g));
    }
    if g > MAX_GENUS {
        return Err(ThetaError::GenusTooLarge(g));
    }
    Ok(pow2(g - 1))
}

/// Guaranteed number of `(g-2)`-faces, 0 when no bound applies. `k` is the
/// number of ovals on which the differential at infinity induces the complex
/// orientation, and only applies to M-curves.
pub fn face_lower_bound(t: &CurveTopology, k: Option<u32>) -> Result<BigUint, ThetaError> {
    let (g, s) = (t.g, t.s);
    if g < 3 {
        return Err(ThetaError::GenusBelowThree(g));
    }
    if let Some(k) = k {
        if s != g + 1 {
            return Err(ThetaError::KNotApplicable);
        }
        if k < 1 || k > g {
            return Err(ThetaError::KOutOfRange { g, k });
        }
    }
    let v = if s + 1 == g && !t.dividing {
        2
    } else if s == g {
        g as u64
    } else if s == g + 1 {
        match k {
            Some(k) => k as u64 * (g + 1 - k) as u64,
            None => g as u64,
        }
    } else {
        0
    };
    Ok(BigUint::from(v))
}

/// `binom(s, g-1) 2^{g-1}` for non-dividing curves and M-curves, else 0.
pub fn totally_real_lower_bound(t: &CurveTopology) -> BigUint {
    if !t.dividing || t.is_m_curve() {
        binomial(t.s as u64, t.g as u64 - 1) * pow2(t.g - 1)
    } else {
        BigUint::zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub s: u32,
    pub a: u8,
    #[serde(serialize_with = "ser_big")]
    pub lower: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub upper: BigUint,
}

/// One row per admissible `(s, a)`, ordered by `s` then `a`.
pub fn bounds_table(g: u32) -> Result<Vec<BoundsRow>, ThetaError> {
    if g < 3 {
        return Err(ThetaError::GenusBelowThree(g));
    }
    let mut rows = Vec::new();
    for s in 1..=g + 1 {
        for a in 0..=1u8 {
            let Ok(t) = CurveTopology::new(g, s, a == 0) else {
                continue;
            };
            rows.push(BoundsRow {
                s,
                a,
                lower: totally_real_lower_bound(&t),
                upper: count_real_theta(&t).odd,
            });
        }
    }
    Ok(rows)
}

fn check_hyperelliptic(g: u32, r: u32) -> Result<(), ThetaError> {
    if g < 2 {
        return Err(ThetaError::HyperellipticGenus);
    }
    if g > MAX_GENUS {
        return Err(ThetaError::GenusTooLarge(g));
    }
    if r > g + 1 {
        return Err(ThetaError::BranchPointsOutOfRange { g, r });
    }
    Ok(())
}

/// Totally real odd theta characteristics of a real hyperelliptic curve of
/// genus `g` with `2r` real branch points: `sum_l binom(2r, g-1-4l)`.
pub fn hyperelliptic_totally_real_odd(g: u32, r: u32) -> Result<BigUint, ThetaError> {
    check_hyperelliptic(g, r)?;
    let mut acc = BigUint::zero();
    for l in 0..=(g - 1) / 4 {
        acc += binomial(2 * r as u64, (g - 1 - 4 * l) as u64);
    }
    Ok(acc)
}
