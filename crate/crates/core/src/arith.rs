//! Small-integer number theory helpers used for index bookkeeping.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Prime factors of `n` in increasing order, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Index of the Hecke congruence subgroup of level `n` in SL(2,Z):
/// n times the product of (1 + 1/q) over primes q dividing n.
pub fn gamma0_index(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, q| acc / q * (q + 1))
}

/// Inverse of `a` modulo `m`, if it exists. `m = 1` yields `Some(0)`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Nonnegative residue of a big integer modulo a machine modulus.
pub fn mod_u64(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue fits in u64")
}

/// Extended gcd on big integers with a nonnegative gcd: returns (g, x, y)
/// with a·x + b·y = g.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Smallest integer not less than p/q for q > 0.
pub fn ceil_div(p: &BigInt, q: &BigInt) -> BigInt {
    debug_assert!(q.is_positive());
    let (d, r) = p.div_mod_floor(q);
    if r.is_zero() {
        d
    } else {
        d + BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_small_levels() {
        let expected = [1, 3, 4, 6, 6, 12, 8, 12, 12, 18];
        for (n, &mu) in (1..=10).zip(expected.iter()) {
            assert_eq!(gamma0_index(n), mu, "n={n}");
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(5, 1), Some(0));
    }

    #[test]
    fn ceilings() {
        let c = |p: i64, q: i64| ceil_div(&BigInt::from(p), &BigInt::from(q));
        assert_eq!(c(2, 1), BigInt::from(2));
        assert_eq!(c(3, 2), BigInt::from(2));
        assert_eq!(c(-3, 2), BigInt::from(-1));
        assert_eq!(c(0, 5), BigInt::from(0));
    }

    #[test]
    fn ext_gcd_sign() {
        let (g, x, y) = ext_gcd(&BigInt::from(-4), &BigInt::from(6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(BigInt::from(-4) * x + BigInt::from(6) * y, g);
    }
}
