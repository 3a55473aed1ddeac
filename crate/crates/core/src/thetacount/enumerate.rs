use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::{check_hyperelliptic, CurveTopology, HMatrix, ParityCounts, ThetaChar, ThetaError};

/// Largest genus for which the `4^g` enumeration is attempted.
pub const MAX_BRUTE_FORCE_GENUS: u32 = 12;

/// Above this many real branch points the subset oracle counts subsets by
/// size through an in/out recursion (Pascal rows) instead of listing them.
const SUBSET_LISTING_LIMIT: u32 = 26;

const MAX_ORACLE_GENUS: u32 = 16;

fn check_enumerable(g: u32) -> Result<(), ThetaError> {
    if g > MAX_BRUTE_FORCE_GENUS {
        Err(ThetaError::EnumerationTooLarge(g, MAX_BRUTE_FORCE_GENUS))
    } else {
        Ok(())
    }
}

/// Counts `(u, v)` over all of F2^{2g} satisfying `keep`, split by parity.
fn enumerate<F>(g: u32, keep: F) -> (u64, u64)
where
    F: Fn(ThetaChar) -> bool + Sync,
{
    let n = 1u64 << g;
    (0..n)
        .into_par_iter()
        .map(|v| {
            let mut odd = 0u64;
            let mut even = 0u64;
            for u in 0..n {
                let th = ThetaChar { u, v };
                if keep(th) {
                    if th.is_odd() {
                        odd += 1;
                    } else {
                        even += 1;
                    }
                }
            }
            (odd, even)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Real theta characteristics (`Hv = diag H`) by listing all `4^g` pairs.
pub fn brute_force_real_theta(t: &CurveTopology) -> Result<ParityCounts, ThetaError> {
    check_enumerable(t.g)?;
    let h = HMatrix::new(t);
    let (odd, even) = enumerate(t.g, |th| th.is_real(&h));
    Ok(ParityCounts {
        odd: odd.into(),
        even: even.into(),
    })
}

/// All theta characteristics of a genus-`g` curve, real or not.
pub fn brute_force_all_theta(g: u32) -> Result<ParityCounts, ThetaError> {
    check_enumerable(g)?;
    let (odd, even) = enumerate(g, |_| true);
    Ok(ParityCounts {
        odd: odd.into(),
        even: even.into(),
    })
}

/// Odd real theta characteristics with `u_{r+i} = signs[i]`, by enumeration.
pub fn brute_force_odd_with_signs(t: &CurveTopology, signs: &[bool]) -> Result<BigUint, ThetaError> {
    check_enumerable(t.g)?;
    t.check_signs(signs)?;
    let h = HMatrix::new(t);
    let r = t.rank();
    let (mask, want) = signs
        .iter()
        .enumerate()
        .fold((0u64, 0u64), |(m, w), (i, &b)| {
            let bit = 1u64 << (r as usize + i);
            (m | bit, if b { w | bit } else { w })
        });
    let (odd, _) = enumerate(t.g, |th| th.u & mask == want && th.is_real(&h));
    Ok(odd.into())
}

/// Sum over odd `k >= 1` of the number of subsets of the `2r` real branch
/// points with exactly `g + 1 - 2k` elements.
pub fn hyperelliptic_oracle(g: u32, r: u32) -> Result<BigUint, ThetaError> {
    check_hyperelliptic(g, r)?;
    if g > MAX_ORACLE_GENUS {
        return Err(ThetaError::EnumerationTooLarge(g, MAX_ORACLE_GENUS));
    }
    let points = 2 * r;
    let by_size = subsets_by_size(points);
    let mut total = BigUint::zero();
    let mut k = 1;
    while 2 * k <= g + 1 {
        let size = (g + 1 - 2 * k) as usize;
        if size < by_size.len() {
            total += &by_size[size];
        }
        k += 2;
    }
    Ok(total)
}

fn subsets_by_size(points: u32) -> Vec<BigUint> {
    if points <= SUBSET_LISTING_LIMIT {
        let mut hist = vec![0u64; points as usize + 1];
        for set in 0u64..1 << points {
            hist[set.count_ones() as usize] += 1;
        }
        hist.into_iter().map(BigUint::from).collect()
    } else {
        let mut row = vec![BigUint::from(1u32)];
        for _ in 0..points {
            let mut next = vec![BigUint::zero(); row.len() + 1];
            for (i, c) in row.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c;
            }
            row = next;
        }
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_theta_genus_two() {
        let c = brute_force_all_theta(2).unwrap();
        assert_eq!((c.odd, c.even), (6u32.into(), 10u32.into()));
    }

    #[test]
    fn genus_one_total() {
        let t = CurveTopology::new(1, 1, false).unwrap();
        let c = brute_force_real_theta(&t).unwrap();
        assert_eq!(c.odd + c.even, 2u32.into());
    }

    #[test]
    fn signs_genus_four() {
        let t = CurveTopology::new(4, 3, false).unwrap();
        for w in 0..4u32 {
            let signs = [w & 1 == 1, w & 2 == 2];
            assert_eq!(brute_force_odd_with_signs(&t, &signs).unwrap(), 8u32.into());
        }
    }

    #[test]
    fn oracle_values() {
        assert_eq!(hyperelliptic_oracle(3, 2).unwrap(), 6u32.into());
        assert_eq!(hyperelliptic_oracle(2, 3).unwrap(), 6u32.into());
        assert_eq!(hyperelliptic_oracle(2, 0).unwrap(), 0u32.into());
        assert_eq!(hyperelliptic_oracle(5, 0).unwrap(), 1u32.into());
    }

    #[test]
    fn listing_and_recursion_agree() {
        assert_eq!(subsets_by_size(SUBSET_LISTING_LIMIT), {
            let mut row = vec![BigUint::from(1u32)];
            for _ in 0..SUBSET_LISTING_LIMIT {
                let mut next = vec![BigUint::zero(); row.len() + 1];
                for (i, c) in row.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c;
                }
                row = next;
            }
            row
        });
    }

    #[test]
    fn too_large() {
        let t = CurveTopology::new(13, 1, false).unwrap();
        assert!(brute_force_real_theta(&t).is_err());
    }
}
