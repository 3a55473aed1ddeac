//! Multi-modular gcd of integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    (0u64..).map(|k| (1u64 << 62) - 1 - 2 * k).filter(|&n| is_prime(n))
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap_or(0)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `Z/p`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                let t = mul_mod(f, bi, p);
                a[off + i] = (a[off + i] + p - t) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - m
    } else {
        c.clone()
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let neg = v.last().is_some_and(|c| c.is_negative());
    v.into_iter()
        .map(|c| if neg { -(c / &g) } else { c / &g })
        .collect()
}

fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let lc = d.last().unwrap();
    while r.len() >= d.len() {
        let top = r.last().unwrap();
        if top.is_zero() {
            r.pop();
            continue;
        }
        let (q, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return false;
        }
        let off = r.len() - d.len();
        for (i, di) in d.iter().enumerate() {
            r[off + i] -= &q * di;
        }
        r.pop();
    }
    r.iter().all(Zero::is_zero)
}

/// Primitive gcd (positive leading coefficient) of two nonzero integer
/// polynomials given in ascending order.
pub(crate) fn gcd_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd(lb);
    let mut best: Option<usize> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Vec<BigInt> = Vec::new();
    for p in primes() {
        if reduce(la, p) == 0 || reduce(lb, p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(&ap, &bp, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        let gm = reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        let pb = BigInt::from(p);
        match best {
            Some(bd) if d > bd => continue,
            Some(bd) if d == bd => {
                let minv = inv_mod(reduce(&modulus, p), p);
                for (h, &gp) in acc.iter_mut().zip(&g) {
                    let hp = reduce(h, p);
                    let t = mul_mod((gp + p - hp) % p, minv, p);
                    *h += &modulus * BigInt::from(t);
                }
                modulus *= &pb;
            }
            _ => {
                best = Some(d);
                acc = g.iter().map(|&c| BigInt::from(c)).collect();
                modulus = pb;
                last.clear();
                continue;
            }
        }
        let half: BigInt = &modulus >> 1usize;
        let cand: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus, &half)).collect();
        if cand == last {
            let prim = primitive(cand.clone());
            if divides(&prim, a) && divides(&prim, b) {
                return prim;
            }
        }
        last = cand;
    }
    unreachable!("the prime sequence is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn finds_common_factor() {
        // (x - 2)(x + 3) and (x - 2)(2x + 1)
        let g = gcd_integer(&big(&[-6, 1, 1]), &big(&[-2, -3, 2]));
        assert_eq!(g, big(&[-2, 1]));
        let g = gcd_integer(&big(&[1, 0, 1]), &big(&[-1, 1]));
        assert_eq!(g, big(&[1]));
    }

    #[test]
    fn non_monic_factor() {
        // (3x + 5)(x^2 + 1) and (3x + 5)(7x - 1)
        let g = gcd_integer(&big(&[5, 3, 5, 3]), &big(&[-5, 32, 21]));
        assert_eq!(g, big(&[5, 3]));
    }

    #[test]
    fn primes_are_prime() {
        let p: Vec<u64> = primes().take(3).collect();
        assert!(p.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime(1 << 40) && is_prime(1_000_000_007));
    }
}
